// Timing harness comparing the serial reference kernels against the OpenMP
// variants on representative workloads, verifying agreement as it goes.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "pqs/kernels.hpp"
#include "pqs/poly.hpp"

namespace {

double seconds(std::chrono::steady_clock::time_point a, std::chrono::steady_clock::time_point b) {
    return std::chrono::duration<double>(b - a).count();
}

template <class F>
double timed(F&& f) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    auto t1 = std::chrono::steady_clock::now();
    return seconds(t0, t1);
}

void report(const char* name, double serial, double parallel, bool agree) {
    std::printf("%-24s serial %8.3fs   parallel %8.3fs   speedup %5.2fx   %s\n", name, serial, parallel,
                parallel > 0 ? serial / parallel : 0.0, agree ? "agree" : "MISMATCH");
}

} // namespace

int main(int argc, char** argv) {
    double scale = 1.0;
    if (argc > 1) scale = std::stod(argv[1]);
#ifdef _OPENMP
    std::printf("threads: %d, scale: %.2f\n", omp_get_max_threads(), scale);
#else
    std::printf("threads: 1 (OpenMP disabled), scale: %.2f\n", scale);
#endif

    {
        const std::uint64_t modulus = static_cast<std::uint64_t>(4'782'969 * scale); // 3^14-ish range
        std::vector<std::uint64_t> coeffs{9, 2, 0, 1};
        std::vector<std::uint64_t> rs, rp;
        double ts = timed([&] { rs = pqs::poly_roots_mod_serial(coeffs, modulus); });
        double tp = timed([&] { rp = pqs::poly_roots_mod_parallel(coeffs, modulus); });
        report("poly_roots_mod", ts, tp, rs == rp);
    }
    {
        const std::size_t bits = static_cast<std::size_t>(200'000 * scale);
        pqs::DynBitset base(bits);
        for (std::size_t i = 0; i < bits; i += 7) base.set(i);
        std::vector<std::uint64_t> addends;
        for (std::uint64_t a = 0; a < bits; a += 4) addends.push_back(a);
        pqs::DynBitset ls(bits), lp(bits);
        double ts = timed([&] { ls = pqs::sumset_layer_serial(base, addends); });
        double tp = timed([&] { lp = pqs::sumset_layer_parallel(base, addends); });
        report("sumset_layer", ts, tp, ls == lp);
    }
    {
        const std::uint64_t xmax = static_cast<std::uint64_t>(200'000 * scale);
        pqs::FactoredPoly f(1, {{1, 6}, {2, 10}, {3, 15}});
        pqs::SpectrumCounts cs, cp;
        double ts = timed([&] { cs = pqs::spectrum_scan_serial(f, 3, xmax); });
        double tp = timed([&] { cp = pqs::spectrum_scan_parallel(f, 3, xmax); });
        report("spectrum_scan", ts, tp, cs == cp);
    }
    {
        const std::uint64_t modulus = static_cast<std::uint64_t>(1'953'125 * scale); // 5^9-ish range
        std::optional<std::uint64_t> hs, hp;
        double ts = timed([&] { hs = pqs::first_unit_power_serial(4, modulus, modulus - 1, 5); });
        double tp = timed([&] { hp = pqs::first_unit_power_parallel(4, modulus, modulus - 1, 5); });
        report("first_unit_power", ts, tp, hs == hp);
    }
    return 0;
}
