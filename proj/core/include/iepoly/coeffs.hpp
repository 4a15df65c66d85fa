/* Whole-polynomial coefficient engines.

   Three independent routes to the coefficients of Q_{p,q,r}:
     - oracle: exact division of the defining product of binomials, with a
       zero-remainder assertion at every stage (trusted reference);
     - truncated: the truncated-product expansion, one pass of lattice
       enumeration plus two sparse convolutions, O(degree) memory;
     - window scan: an exact block-periodic scan that produces the
       coefficient *set* of triples whose largest element dwarfs the other
       two, without ever allocating degree-many cells. */

#ifndef IEPOLY_COEFFS_HPP
#define IEPOLY_COEFFS_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "iepoly/triple.hpp"

namespace iepoly {

inline constexpr std::size_t kDefaultMaxCells = 100'000'000;

enum class Engine { oracle, truncated };

struct CoeffResult {
    Int degree;
    std::optional<std::vector<int32_t>> coefficients; // dense, indexed 0..degree
    int64_t set_min = 0;                              // A^-
    int64_t set_max = 0;                              // A^+
    int64_t diameter = 0;
    std::vector<int64_t> values; // distinct coefficient values, sorted
};

/* All coefficients a_0..a_degree.  Requires degree+1 <= max_cells. */
CoeffResult coeff_vector(const Triple& t, Engine engine,
                         std::size_t max_cells = kDefaultMaxCells);

/* Summary only (A^-, A^+, diameter); picks a dense engine when the degree
   fits the cell cap and falls back to the window scan for lopsided
   triples.  Asserts that the set is a contiguous integer interval. */
CoeffResult coeff_set(const Triple& t, std::size_t max_cells = kDefaultMaxCells);

/* Window-scan engine, exposed for cross-checks.  Applicable when the
   largest element exceeds the product of the other two by a margin. */
bool scan_applicable(const Triple& t);
CoeffResult coeff_set_scan(const Triple& t);

/* "m,a_m" rows, one per index. */
void write_csv(std::ostream& os, const CoeffResult& result);

/* {p,q,r,degree,min,max,diameter}; big integers as decimal strings. */
std::string summary_json(const Triple& t, const CoeffResult& result);

} // namespace iepoly

#endif
