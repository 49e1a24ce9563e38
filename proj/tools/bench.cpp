// Benchmark: OpenMP-parallel trace assembly vs the serial reference path.
// Both paths use a fixed reduction order, so their outputs must be identical;
// the benchmark verifies that while timing them.

#include "hybrid/engine.hpp"

#include <chrono>
#include <iostream>

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace hybrid;

namespace {

HybridSpec make_hybrid(int n_segments) {
    HybridSpec h;
    ManifoldSpec t;
    t.name = "torus";
    t.volume = scalar_int(4) * scalar_pi() * scalar_pi();
    t.euler_char = 0;
    for (int i = 0; i < 2 * n_segments; ++i) {
        t.gluing_points.push_back(
            {"p" + std::to_string(i),
             {scalar_from_rational(Rational(i + 1, 7)), scalar_from_rational(Rational(2 - i, 5))}});
    }
    h.manifolds.push_back(t);
    for (int k = 0; k < n_segments; ++k) {
        h.segments.push_back({"s" + std::to_string(k), scalar_int(k + 1)});
        h.endpoints.push_back({0, 2 * k});
        h.endpoints.push_back({0, 2 * k + 1});
    }
    return h;
}

SelfAdjointDiagBC make_bc(int n_points) {
    SelfAdjointDiagBC bc;
    for (int i = 0; i < n_points; ++i)
        bc.points.push_back({Rational(i - 1, 2), GQ(Rational(1), Rational(i, 3)),
                             Rational(2 * i + 3, 4)});
    return bc;
}

double time_ms(bool parallel, const HybridSpec& h, const BoundaryCondition& bc, int order,
               ExpansionResult& out) {
    auto t0 = std::chrono::steady_clock::now();
    out = assemble_trace(h, bc, order, parallel);
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::cout << "OpenMP threads: " << omp_get_max_threads() << "\n";
#else
    std::cout << "OpenMP not enabled; both paths run serially\n";
#endif
    std::cout << "N  order  serial_ms  parallel_ms  speedup  identical\n";
    for (int n_seg : {1, 2, 3}) {
        for (int order : {8, 10}) {
            HybridSpec h = make_hybrid(n_seg);
            BoundaryCondition bc = make_bc(2 * n_seg).to_boundary_condition();
            ExpansionResult serial, parallel;
            double ts = time_ms(false, h, bc, order, serial);
            double tp = time_ms(true, h, bc, order, parallel);
            bool same = serial.series == parallel.series;
            std::cout << 2 * n_seg << "  " << order << "  " << ts << "  " << tp << "  "
                      << (tp > 0 ? ts / tp : 0.0) << "  " << (same ? "yes" : "NO") << "\n";
            if (!same) return 1;
        }
    }
    return 0;
}
