#ifndef IEPOLY_ERRORS_HPP
#define IEPOLY_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace iepoly {

/* Bad user input: out-of-domain arguments, violated preconditions. */
struct validation_error : std::invalid_argument {
    explicit validation_error(const std::string& what) : std::invalid_argument(what) {}
};

/* Stated hypotheses of a construction do not hold for the given input.
   This is an informative outcome, distinct from malformed input. */
struct hypothesis_error : std::runtime_error {
    explicit hypothesis_error(const std::string& what) : std::runtime_error(what) {}
};

/* A configured resource cap (memory cells, search budget) was exceeded. */
struct resource_error : std::runtime_error {
    explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

/* An internal invariant failed: engines disagree, a guaranteed congruence
   turned out insoluble, a contiguity assertion broke.  Always a bug. */
struct internal_error : std::logic_error {
    explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

} // namespace iepoly

#endif
