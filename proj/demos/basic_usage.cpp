// Walk through the core library calls on a small system.

#include <iostream>

#include "encap/experiments.hpp"
#include "encap/ingest.hpp"
#include "encap/metrics.hpp"

int main() {
    using namespace encap;

    // twenty nodes in four regions of five, one doorway each
    const FlatSystem teams = uniform_system(20, 4, 1);
    std::cout << "uniform 20/4/1: psc = " << system_psc(teams).total
              << " (oracle " << enumerate_psc_oracle(teams) << ")\n";
    std::cout << "unencapsulated 20: " << psc_unencapsulated(20) << "\n";
    std::cout << "best region count for n=20, p=1: " << recommended_regions(20, 1)
              << " (r_min = " << r_min(20, 1) << ")\n";

    const MetricsReport report = configuration_efficiency(teams);
    std::cout << "c_e = " << report.c_e << ", hidden share = " << report.ihv_percent << "%\n";

    const char* manifest_text =
        "context flat\n"
        "region core private=4 public=1\n"
        "region api private=2 public=3\n";
    const Manifest manifest = parse_manifest(manifest_text);
    const FlatSystem parsed = manifest.to_flat();
    std::cout << "manifest psc = " << system_psc(parsed).total << "\n";

    const AmcVerdict verdict = amc_check(parsed);
    if (verdict.comparable) {
        std::cout << "anomalous: " << (verdict.is_amc ? "yes" : "no") << "\n";
    }
    return 0;
}
