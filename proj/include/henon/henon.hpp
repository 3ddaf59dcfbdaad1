#pragma once

#include "henon/analysis.hpp"
#include "henon/dynamics.hpp"
#include "henon/exact.hpp"
#include "henon/family.hpp"
#include "henon/io.hpp"
#include "henon/polynomial.hpp"
