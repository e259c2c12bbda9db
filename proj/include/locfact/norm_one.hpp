#ifndef LOCFACT_NORM_ONE_HPP
#define LOCFACT_NORM_ONE_HPP

#include <functional>
#include <utility>
#include <vector>

#include "locfact/field.hpp"

namespace locfact {

// The norm-one torus K = Ker(N: E^x -> F^x) carries the filtration
// K(d) = {x in K : val_E(x - 1) >= d}.  Cosets of K/K(d) are keyed by the
// residue of (a, b) at the resolution that determines membership:
//   unramified: a, b mod p^d
//   ramified:   a mod p^(t+1), b mod p^t with t = floor(d/2)
// (in the ramified tower K(2t) = K(2t+1), so even depths share the odd keys).

// |K / K(depth)|: (p+1)p^(depth-1) unramified, 2p^floor(depth/2) ramified.
i64 norm_one_coset_count(const FieldConfig& F, int depth);

// Stream exactly one representative per coset; each satisfies N(x) = 1 at
// full working precision and reduces to its coset key.
void norm_one_scan(const FieldConfig& F, int depth, const std::function<void(const Ex&)>& fn);

std::vector<Ex> norm_one_reps(const FieldConfig& F, int depth);

// Coset key of a norm-one element.
std::pair<u64, u64> norm_one_key(const FieldConfig& F, int depth, const Ex& x);

// Generator of the maximal finite subgroup of K: order p+1 (unramified,
// Teichmueller construction) or 2 (ramified, -1).
Ex norm_one_torsion_gen(const FieldConfig& F);
i64 norm_one_torsion_order(const FieldConfig& F);

// Teichmueller lift generating the full cyclic group of order p^2 - 1
// (unramified extensions only).
Ex teichmuller_generator_E(const FieldConfig& F);

}  // namespace locfact

#endif
