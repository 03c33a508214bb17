#pragma once

#include "ctlab/syntax.hpp"

namespace ctlab::detail {

// f with its only free variable renamed to v0. TooManyFreeVars for more.
Formula as_subject(const Formula& f);

// f with its only free variable (if any) replaced by a closed term of value x.
Formula instantiate(const Formula& f, const Natural& x);

// Canonical closed term for x: the numeral up to 64, a binary term above.
Term value_term(const Natural& x);

}  // namespace ctlab::detail
