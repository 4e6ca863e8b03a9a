#pragma once

#include "sunits/criterion.hpp"
#include "sunits/decompose.hpp"
#include "sunits/embedding.hpp"
#include "sunits/enumerate.hpp"
#include "sunits/errors.hpp"
#include "sunits/prime_set.hpp"
#include "sunits/primes.hpp"
#include "sunits/sequence.hpp"
#include "sunits/solve.hpp"
#include "sunits/sunit.hpp"
#include "sunits/unit_equation.hpp"
#include "sunits/witness.hpp"
