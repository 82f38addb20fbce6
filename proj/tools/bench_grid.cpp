// Compares the serial reference evaluation of the angle machinery with
// the OpenMP grid path on a few representative problems.
#include <chrono>
#include <cstdio>

#include "lagmin/verify.hpp"

using namespace lagmin;

namespace {

template <typename F>
double timed(F&& f) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

void bench(const char* name, const LagrangianImmersion& im, const GridSpec& spec) {
    double serial = timed([&] {
        lagrangian_angle_field(im, spec, ExecutionMode::serial);
    });
    double parallel = timed([&] {
        lagrangian_angle_field(im, spec, ExecutionMode::parallel);
    });
    std::printf("%-24s serial %7.3fs  parallel %7.3fs  speedup %.2fx\n", name,
                serial, parallel, serial / parallel);
}

}  // namespace

int main() {
    bench("cornu-pillow 256^2",
          product_of_curves({make_cornu(1.0), make_cornu(1.0)}), {{256, 256}});
    bench("cornu x flat-torus 40^3",
          curve_times_legendrian(make_cornu(1.0, 0.5, 2.5), flat_torus()),
          {{40, 40, 40}});
    LagrangianSurface surf = curve_join_surface(geodesic_sphere(1), alpha_qr(1, 2),
                                                0.2, kPi / 2.0 - 0.2);
    // beta winds quickly along the phase axis: keep its step small
    bench("doubly-legendrian 12x24x12x12",
          surface_times_two_legendrians(surf, geodesic_sphere(1),
                                        geodesic_sphere(1)),
          {{12, 24, 12, 12}});
    return 0;
}
