// Compares the serial and the OpenMP matrix-vector kernels on a periodic
// spin-1/2 Heisenberg chain.

#include <chrono>
#include <cstdio>
#include <random>

#include "spinlsm/spectra.hpp"

using namespace spinlsm;

namespace {

double time_ms(const std::function<void()>& f, int reps) {
    f();  // warm up
    const auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < reps; ++i) f();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

}  // namespace

int main(int argc, char** argv) {
    int lmin = 10, lmax = 18;
    if (argc > 1) lmax = std::atoi(argv[1]);
    std::printf("%4s %10s %14s %14s %9s %12s\n", "L", "dim", "serial[ms]", "parallel[ms]",
                "speedup", "max|diff|");
    for (int l = lmin; l <= lmax; l += 2) {
        ChainHamiltonian h =
            build_heisenberg(std::vector<int>(l, 1), std::vector<double>(l, 1.0),
                             Boundary::periodic);
        const std::size_t dim = h.dim();
        std::mt19937 rng(7);
        std::normal_distribution<double> gauss;
        CVec psi(dim);
        for (std::size_t i = 0; i < dim; ++i) psi(i) = {gauss(rng), gauss(rng)};
        psi.normalize();
        CVec a, b;
        const int reps = dim > 200000 ? 2 : 8;
        const double ts = time_ms([&] { a = apply_hamiltonian_serial(h, psi); }, reps);
        const double tp = time_ms([&] { b = apply_hamiltonian(h, psi); }, reps);
        std::printf("%4d %10zu %14.3f %14.3f %9.2f %12.3e\n", l, dim, ts, tp, ts / tp,
                    (a - b).cwiseAbs().maxCoeff());
    }
    return 0;
}
