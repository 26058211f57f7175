#pragma once

#include "freenc/convergence.hpp"
#include "freenc/diffcalc.hpp"
#include "freenc/errors.hpp"
#include "freenc/expr.hpp"
#include "freenc/function.hpp"
#include "freenc/json_io.hpp"
#include "freenc/linalg.hpp"
#include "freenc/matrix.hpp"
#include "freenc/polynomial.hpp"
#include "freenc/rational.hpp"
#include "freenc/scalar.hpp"
#include "freenc/tensor.hpp"
#include "freenc/ttseries.hpp"
#include "freenc/tuple.hpp"
#include "freenc/word.hpp"
