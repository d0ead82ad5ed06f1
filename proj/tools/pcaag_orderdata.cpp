// pcaag-orderdata: presentation files for polynomials of degree >= 3, built
// on the equation order Z[theta] with independent units found by search.

#include <CLI11.hpp>

#include <iostream>

#include "pcaag/consistency.hpp"
#include "pcaag/errors.hpp"
#include "pcaag/orderdata.hpp"

using namespace pcaag;

int main(int argc, char** argv) {
  CLI::App app{"Build Z[theta] x| <units, -1> presentations"};
  std::string poly, out;
  UnitSearchOptions options;
  app.add_option("--poly", poly, "Monic irreducible polynomial")->required();
  app.add_option("--out", out, "Output presentation file")->required();
  app.add_option("--bound", options.coefficient_bound, "Coefficient bound for candidates")
      ->capture_default_str();
  app.add_option("--norm-limit", options.quotient_norm_limit, "Largest |norm| paired for quotients")
      ->capture_default_str();
  app.add_option("--max-support", options.max_support, "Maximum nonzero coefficients (0: any)")
      ->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  try {
    IntPolynomial f = parse_polynomial(poly);
    EquationOrderUnits data = find_independent_units(f, options);
    std::cerr << f.to_string() << ": signature (" << data.signature.s << ", " << data.signature.t
              << "), unit rank " << data.rank << '\n';
    for (const auto& u : data.units) {
      std::cerr << "  unit";
      for (const auto& c : u) std::cerr << ' ' << c.to_string();
      std::cerr << '\n';
    }
    PcPresentation p = equation_order_presentation(data);
    ConsistencyReport report = check_consistency(p);
    if (!report.pass) throw InconsistentPresentation(report.describe());
    if (static_cast<int>(hirsch_length(p)) != predicted_hirsch(f)) {
      throw InvalidParameter("Hirsch length differs from the prediction");
    }
    save_presentation(p, out);
    std::cerr << "wrote " << out << " (Hirsch length " << hirsch_length(p) << ")\n";
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
