#include "pcaag/consistency.hpp"

#include <sstream>

#include "pcaag/errors.hpp"

namespace pcaag {

const char* to_string(OverlapKind kind) {
  switch (kind) {
    case OverlapKind::kTriple: return "g_k(g_j g_i) = (g_k g_j)g_i";
    case OverlapKind::kPowerLeft: return "(g_j^r_j)g_i = g_j^(r_j-1)(g_j g_i)";
    case OverlapKind::kPowerRight: return "g_j(g_i^r_i) = (g_j g_i)g_i^(r_i-1)";
    case OverlapKind::kPowerSelf: return "g_j^r_j g_j = g_j g_j^r_j";
    case OverlapKind::kInverseRight: return "g_j = (g_j g_i^-1)g_i";
    case OverlapKind::kInverseLeft: return "g_j = (g_j g_i)g_i^-1";
    case OverlapKind::kSuppliedInverse: return "v_ij = g_i g_j g_i^-1";
  }
  return "?";
}

namespace {

std::string render(const GroupElement& g) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < g.size(); ++i) os << (i ? "," : "") << g[i];
  os << ")";
  return os.str();
}

class OverlapRunner {
 public:
  explicit OverlapRunner(const Collector& c) : c_(c) {}

  // Returns false (and records the failure) when the two sides differ.
  template <class Lhs, class Rhs>
  bool check(OverlapKind kind, std::vector<std::size_t> indices, Lhs&& lhs, Rhs&& rhs) {
    ++report.overlaps_checked;
    try {
      GroupElement left = lhs();
      GroupElement right = rhs();
      if (left == right) return true;
      report.failure = OverlapFailure{kind, std::move(indices), std::move(left), std::move(right), {}};
    } catch (const CollectionBudgetExceeded& e) {
      report.failure = OverlapFailure{kind, std::move(indices), {}, {}, e.what()};
    }
    report.pass = false;
    return false;
  }

  ConsistencyReport report;

 private:
  const Collector& c_;
};

}  // namespace

std::string ConsistencyReport::describe() const {
  std::ostringstream os;
  if (pass) {
    os << "PASS (" << overlaps_checked << " overlaps)";
    return os.str();
  }
  os << "FAIL";
  if (failure) {
    os << " at overlap " << to_string(failure->kind) << " with indices";
    for (auto i : failure->indices) os << " " << i + 1;
    if (!failure->message.empty()) {
      os << ": " << failure->message;
    } else {
      os << ": " << render(failure->lhs) << " != " << render(failure->rhs);
    }
  }
  return os.str();
}

ConsistencyReport check_consistency(const PcPresentation& p, CollectorOptions options) {
  try {
    Collector collector(std::make_shared<const PcPresentation>(p), options);
    return check_consistency(collector);
  } catch (const CollectionBudgetExceeded& e) {
    ConsistencyReport report;
    report.pass = false;
    report.failure = OverlapFailure{OverlapKind::kTriple, {}, {}, {}, e.what()};
    return report;
  }
}

ConsistencyReport check_consistency(const Collector& c) {
  const auto& p = c.presentation();
  const std::size_t n = p.size();
  OverlapRunner run(c);
  auto gen = [&](std::size_t k, Integer e = 1) { return c.generator(k, e); };
  auto mul = [&](const GroupElement& a, const GroupElement& b) { return c.multiply(a, b); };

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        if (!run.check(
                OverlapKind::kTriple, {k, j, i},
                [&] { return mul(gen(k), mul(gen(j), gen(i))); },
                [&] { return mul(mul(gen(k), gen(j)), gen(i)); })) {
          return run.report;
        }
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (p.is_finite(j)) {
        const std::int64_t rj = p.order(j);
        if (!run.check(
                OverlapKind::kPowerLeft, {j, i},
                [&] { return mul(c.power_image(j), gen(i)); },
                [&] { return mul(gen(j, rj - 1), mul(gen(j), gen(i))); })) {
          return run.report;
        }
      }
      if (p.is_finite(i)) {
        const std::int64_t ri = p.order(i);
        if (!run.check(
                OverlapKind::kPowerRight, {j, i},
                [&] { return mul(gen(j), c.power_image(i)); },
                [&] { return mul(mul(gen(j), gen(i)), gen(i, ri - 1)); })) {
          return run.report;
        }
      } else {
        if (!run.check(
                OverlapKind::kInverseRight, {j, i}, [&] { return gen(j); },
                [&] { return mul(mul(gen(j), gen(i, -1)), gen(i)); })) {
          return run.report;
        }
        if (!run.check(
                OverlapKind::kInverseLeft, {j, i}, [&] { return gen(j); },
                [&] { return mul(mul(gen(j), gen(i)), gen(i, -1)); })) {
          return run.report;
        }
      }
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (!p.is_finite(j)) continue;
    if (!run.check(
            OverlapKind::kPowerSelf, {j}, [&] { return mul(c.power_image(j), gen(j)); },
            [&] { return mul(gen(j), c.power_image(j)); })) {
      return run.report;
    }
  }
  // A supplied v_ij for finite r_i must agree with the reconstructed conjugate.
  for (std::size_t i = 0; i < n; ++i) {
    if (!p.is_finite(i)) continue;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (p.conjugate(i, j, -1) == nullptr) continue;
      if (!run.check(
              OverlapKind::kSuppliedInverse, {j, i},
              [&] { return c.conjugate_image(i, j, -1); },
              [&] { return c.conjugate(gen(j), gen(i, -1)); })) {
        return run.report;
      }
    }
  }
  return run.report;
}

void require_consistent(const Collector& collector) {
  auto report = check_consistency(collector);
  if (!report) throw InconsistentPresentation("presentation is not consistent: " + report.describe());
}

}  // namespace pcaag
