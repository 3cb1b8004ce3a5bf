// Times the serial reference matrix Gauss sum against the OpenMP kernel
// on a mid-size cell and checks they agree exactly.

#include <chrono>
#include <cstdint>
#include <functional>
#include <iostream>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "cusp/hereditary.hpp"
#include "cusp/serialize.hpp"

using namespace cusp;

namespace {

double run_ms(const std::function<void()>& fn) {
    auto t0 = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace

int main(int argc, char** argv) {
    std::uint64_t p = 3;
    std::uint32_t n = 2, e = 1, l = 2;
    if (argc >= 2) p = std::stoull(argv[1]);
    if (argc >= 3) n = static_cast<std::uint32_t>(std::stoul(argv[2]));
    if (argc >= 4) e = static_cast<std::uint32_t>(std::stoul(argv[3]));
    if (argc >= 5) l = static_cast<std::uint32_t>(std::stoul(argv[4]));

    FieldParams k = FieldParams::make(p, 1);
    AddChar psi{k, 1};
    HereditaryOrder ord = make_order(n, e);
    MultChar chi = enumerate_mult_chars(k, TameExt{1, 0}, l, 1).front();
    mpz_class budget(100000000L);

    std::cout << "cell: q=" << k.q() << " n=" << n << " e=" << e << " l=" << l
              << "  residues=" << order_index(ord, k.q(), static_cast<std::uint64_t>(e) * l + 1).get_str()
              << "\n";

    CycNum serial, parallel;
    double t_serial = run_ms([&] { serial = matrix_gauss_full_reference(ord, chi, psi, budget); });
    double t_omp1 = run_ms([&] { parallel = matrix_gauss_full(ord, chi, psi, budget, 1); });
    bool ok = serial == parallel;
    double t_omp = run_ms([&] { parallel = matrix_gauss_full(ord, chi, psi, budget, 0); });
    ok = ok && serial == parallel;

#ifdef _OPENMP
    int threads = omp_get_max_threads();
#else
    int threads = 1;
#endif
    std::cout << "serial reference : " << t_serial << " ms\n";
    std::cout << "kernel (1 thread): " << t_omp1 << " ms\n";
    std::cout << "kernel (" << threads << " threads): " << t_omp << " ms\n";
    std::cout << "tau = " << csv_flat(serial) << "\n";
    std::cout << (ok ? "results identical" : "MISMATCH") << "\n";
    return ok ? 0 : 1;
}
