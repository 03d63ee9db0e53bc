#pragma once

#include "drep/algebra.hpp"
#include "drep/linalg.hpp"
#include "drep/presentation.hpp"

#include <map>
#include <string>

namespace drep {

// Presentation files: an optional `algebra` section (generators and
// relations) and a `resolution` section (generators and `d` lines).
//
//   # comment
//   algebra
//     gen x
//     gen y
//     rel x*y - y*x
//   resolution
//     gen x
//     gen y
//     gen t 1 weight 2
//     d t = x*y - y*x
//
// `gen NAME [HOMDEG] [weight W]` defaults to degree 0, weight 1.  An
// optional `flavor comm` line switches the resolution to the
// graded-commutative flavor (used by emitted presentations).

struct ParseError : std::runtime_error {
    int line = 0;
    ParseError(const std::string& msg, int ln);
};

struct PresentationFile {
    AlgebraSpec algebra;        // empty pres when the section is absent
    bool has_algebra = false;
    DGPresentation resolution;
};

PresentationFile parse_presentation(const std::string& text);
PresentationFile load_presentation(const std::string& path);

std::string print_presentation(const DGPresentation& p);

// Rep files: one `x = [[a,b],[c,d]]` line per generator.
std::map<std::string, RatMatrix> parse_rep_file(const std::string& text, int dim);
std::map<std::string, RatMatrix> load_rep_file(const std::string& path, int dim);

} // namespace drep
