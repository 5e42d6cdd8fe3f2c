#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "common.hpp"
#include "gl2.hpp"
#include "modcurve.hpp"

// Replayable verification claims. Each claim recomputes one published or
// derived value from scratch through the library modules and compares it
// against a frozen expectation. Claims whose full conclusion needs machinery
// outside this toolkit (number-field descent steps, external search
// constraints) are marked inconclusive by design and never report PASS.

namespace qcv::claims {

enum class Status { Pass, Fail, Inconclusive };

// Where the expected value comes from: stated in the source material,
// derived by an independent oracle, or true by construction of the toolkit.
enum class Provenance { Published, Derived, Definition };

std::string_view to_string(Status s);
std::string_view to_string(Provenance p);

struct ClaimReport {
  std::string claim_id;
  Status status = Status::Inconclusive;
  std::string computed;
  std::string expected;
  Provenance provenance = Provenance::Derived;
  double elapsed_ms = 0.0;
};

// Static registry row: everything about a claim except its outcome.
struct ClaimInfo {
  std::string claim_id;
  std::string summary;
  std::string expected;
  Provenance provenance = Provenance::Derived;
  bool inconclusive_by_design = false;
};

struct Options {
  std::string only_prefix;  // empty: run every claim
  unsigned jobs = 1;
  // overrides for the builtin gonality table / named-subgroup catalog
  std::optional<std::vector<mcurve::GonalityEntry>> gonality;
  std::optional<std::vector<gl2::CatalogEntry>> catalog;
};

// Sorted by claim_id.
std::vector<ClaimInfo> list_claims();

// Runs the (prefix-filtered) suite, up to `jobs` claims concurrently; the
// report order is by claim_id regardless of completion order. A claim that
// throws is reported INCONCLUSIVE with the error text, never dropped.
std::vector<ClaimReport> run_claims(const Options& opt = {});

// The claim table as markdown; docs/claims.md is exactly this string.
std::string render_markdown_table();

}  // namespace qcv::claims
