// Prints the contact pressure of the first few modes and the shape of the
// 3-fold ring just after buckling.

#include <cstdio>

#include "ringeq/ringeq.hpp"

int main() {
    using namespace ringeq;
    for (int n = 2; n <= 5; ++n) {
        const auto c = solve_contact_pressure(n);
        std::printf("n=%d  buckling=%g  contact=%.6f\n", n, buckling_pressure(n), c.sigma_cn);
    }

    const auto st = solve_equilibrium(3, 16.25);
    const auto poly = sample_shape(st.solution(), 3, 600);
    std::printf("3-fold at sigma=16.25: family=%s closure=%.2e area=%.6f self-intersecting=%s\n",
                family_name(st.family), poly.diagnostics.closure_error, enclosed_area(poly),
                poly.diagnostics.self_intersecting ? "yes" : "no");

    const auto lines = build_contact_line_shape(4, 207.2);
    std::printf("4-fold at sigma=207.2: scale=%.6f straight piece=%.6f\n", lines.scale, lines.piece_length);
}
