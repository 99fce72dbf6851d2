// Compares the serial reference kernels against the OpenMP paths on
// larger-than-test inputs and reports timings; results must agree exactly.

#include "vilenkin/fold.hpp"
#include "vilenkin/mask.hpp"

#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

using namespace vilenkin;

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

Mask random_mask(Prime p, int n, std::mt19937& rng) {
    std::size_t size = 1;
    for (int i = 0; i < n; ++i) size *= std::size_t(p.value());
    std::uniform_int_distribution<int> num(-4, 4);
    std::vector<Cyclotomic> coeffs;
    coeffs.reserve(size);
    for (std::size_t i = 0; i < size; ++i)
        coeffs.push_back(Cyclotomic::from_rational(p, Rational(num(rng), 8)));
    return Mask(p, n, std::move(coeffs));
}

void report(const char* name, double serial_ms, double parallel_ms, bool equal) {
    std::printf("%-28s serial %9.1f ms   parallel %9.1f ms   speedup %4.2fx   %s\n", name,
                serial_ms, parallel_ms, serial_ms / parallel_ms, equal ? "identical" : "MISMATCH");
}

void bench_mask_transform() {
    std::mt19937 rng(7);
    Mask m = random_mask(Prime(2), 16, rng);
    auto t0 = std::chrono::steady_clock::now();
    StepTable serial = mask_values(m, ExecMode::serial);
    double ts = ms_since(t0);
    t0 = std::chrono::steady_clock::now();
    StepTable parallel = mask_values(m, ExecMode::parallel);
    double tp = ms_since(t0);
    report("mask transform (p=2, n=16)", ts, tp, serial.values == parallel.values);
}

void bench_phi_hat() {
    std::mt19937 rng(11);
    Mask m = random_mask(Prime(2), 4, rng);
    // Force coefficient sum 1 so the product stabilizes.
    Cyclotomic gap = Cyclotomic::one(Prime(2)) - m.coefficient_sum();
    m.coeffs[0] += gap;
    auto t0 = std::chrono::steady_clock::now();
    StepTable serial = phi_hat(m, 14, m.n - 1, ExecMode::serial);
    double ts = ms_since(t0);
    t0 = std::chrono::steady_clock::now();
    StepTable parallel = phi_hat(m, 14, m.n - 1, ExecMode::parallel);
    double tp = ms_since(t0);
    report("phi-hat table (R=14, n=4)", ts, tp, serial.values == parallel.values);
}

void bench_fold() {
    std::mt19937 rng(13);
    const Prime p(2);
    std::uniform_int_distribution<int> res(4, 14);
    std::uniform_int_distribution<int> bit(0, 1);
    std::vector<Cylinder> pieces;
    for (int i = 0; i < 40000; ++i) {
        int n = res(rng);
        std::vector<Digit> digits;
        for (int pos = 1; pos <= n; ++pos)
            if (bit(rng)) digits.push_back({pos, 1});
        pieces.emplace_back(Point(p, std::move(digits)), n);
    }
    auto t0 = std::chrono::steady_clock::now();
    EtaFunction serial = fold_rho(p, pieces, 14, ExecMode::serial);
    double ts = ms_since(t0);
    t0 = std::chrono::steady_clock::now();
    EtaFunction parallel = fold_rho(p, pieces, 14, ExecMode::parallel);
    double tp = ms_since(t0);
    bool equal = serial.counts == parallel.counts && serial.partial == parallel.partial;
    report("translate-count fold (40k)", ts, tp, equal);
}

} // namespace

int main() {
    std::printf("threads: %d\n", kernel_threads());
    bench_mask_transform();
    bench_phi_hat();
    bench_fold();
    return 0;
}
