#pragma once

// JSON schemas for root data, forms and verification reports. Rationals are
// written as GMP canonical strings ("8", "-1/4").

#include <stdexcept>

#include "json.hpp"
#include "langdual/ceforms.hpp"
#include "langdual/rootdatum.hpp"
#include "langdual/tduality.hpp"

namespace langdual {

using Json = nlohmann::ordered_json;

class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Same datum with (root, coroot) pairs in canonical order: positive roots
/// (by the generic functional) before negative ones, then by |functional|,
/// then lexicographically.
RootDatum canonical_order(const RootDatum& d);

/// {"label", "rank", "roots", "coroots"} in the datum's own order.
Json datum_to_json(const RootDatum& d);

/// Accepts either the datum schema above or {"descriptor": "A2", "lattice":
/// [[...]]} for a custom isogeny. Throws InputError on malformed input; the
/// result is not validated.
RootDatum datum_from_json(const nlohmann::json& j);

Json form_to_json(const InvariantForm& w);

Json fundamental_group_to_json(const FundamentalGroup& g);

Json report_to_json(const VerificationReport& r, bool timing = true);

}  // namespace langdual
