#pragma once

#include <mvi/bitvector.hpp>
#include <mvi/circuit.hpp>
#include <mvi/errors.hpp>
#include <mvi/expression.hpp>
#include <mvi/factor.hpp>
#include <mvi/gf2.hpp>
#include <mvi/literal.hpp>
#include <mvi/polarity.hpp>
#include <mvi/search.hpp>
#include <mvi/synth.hpp>
#include <mvi/transform.hpp>
