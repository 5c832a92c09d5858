// Regenerates the synthetic fixture tree and its expected-outcome sidecars.
#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <string>

#include "faqkit/fixtures.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Write the deterministic fixture archives, sidecars and configs."};
  std::string out = "fixtures";
  std::uint64_t seed = faqkit::fixtures::kDefaultFixtureSeed;
  app.add_option("--out", out, "Target directory");
  app.add_option("--seed", seed, "Generator seed");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }
  try {
    faqkit::fixtures::generate_fixtures(out, seed);
  } catch (const std::exception& e) {
    std::cerr << "faqkit-fixtures: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
