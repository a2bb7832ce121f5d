#pragma once

#include <functional>
#include <string>

#include "ratl2/config.hpp"

namespace ratl2 {

/**
 * Compiles a one-variable complex expression into an evaluator.  Grammar:
 * numbers, the literals i and t, + - * / ^, parentheses, and the functions
 * exp, log, sin, cos, sqrt, abs, conj.  Used for density specifications like
 * "exp(0.3*i*t)" or "1+t".  Throws std::invalid_argument on parse errors.
 */
std::function<cplx(double)> compile_expr(const std::string& text);

}  // namespace ratl2
