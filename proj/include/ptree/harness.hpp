#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ptree/dataset.hpp"
#include "ptree/rangecount.hpp"
#include "ptree/rayshoot.hpp"
#include "ptree/segquery.hpp"
#include "ptree/stabbing.hpp"

namespace ptree {

struct Params {
  int b = 8;
  Scalar beta = Scalar(Integer(1), Integer(10));
  Scalar eps = Scalar(Integer(1), Integer(2));
  Scalar c_cut = Scalar(Integer(1), Integer(4));
  std::int64_t r = 0, r1 = 0, t_leaf = 8;
  std::int64_t test_set_cap = 64;
  bool audit = false;
  bool verify_cuttings = false;  // check every cutting against the oracle
  std::function<void(const PartitionTree&)> on_tree;
};

TreeConfig tree_config(const Params& p);
RangeCountConfig rangecount_config(const Params& p);
StabbingConfig stabbing_config(const Params& p);
StoreConfig store_config(const Params& p);

// Result of building one structure and checking a query batch against the oracle.
struct CheckResult {
  std::string structure;
  std::int64_t queries = 0, mismatches = 0;
  std::int64_t cutting_checks = 0, cutting_failures = 0;
  std::vector<std::string> failures;  // witnesses, capped
  std::vector<std::int64_t> visited;  // per query: final cells (leaves) visited
  std::vector<std::int64_t> cells;    // per query: all cells visited
  std::vector<QueryKind> kinds;       // per query
  double build_seconds = 0, query_seconds = 0;
  std::uint64_t hash = 0;             // of the serialized structure
  bool ok() const { return mismatches == 0 && failures.empty() && cutting_failures == 0; }
};

// Triangle and halfplane queries.
CheckResult check_rangecount(const Dataset& d, const std::vector<Query>& qs, const Params& p);
// Point queries; count and report.
CheckResult check_stabbing(const Dataset& d, const std::vector<Query>& qs, const Params& p);
// Line and segment queries.
CheckResult check_segquery(const Dataset& d, const std::vector<Query>& qs, const Params& p);
// Ray queries.
CheckResult check_rayshoot(const Dataset& d, const std::vector<Query>& qs, const Params& p);

double median(std::vector<std::int64_t> v);

}  // namespace ptree
