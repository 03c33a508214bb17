#pragma once

#include "ctlab/syntax.hpp"

namespace ctlab::detail {

// Simultaneous substitution whose images may be open. Binders that would
// capture a variable of an image are renamed to indices above everything in
// sight. Only the rank builders need this; the public substitute() stays
// restricted to closed images.
Formula substitute_open(const Formula& f, const TermSubst& s);

}  // namespace ctlab::detail
