// Evaluates the three cochains at a random point and prints the residuals of
// the cocycle identities. A minimal tour of the library API.

#include "eqcartan/eulercocycle.hpp"
#include "eqcartan/formdsl.hpp"

#include <cstdio>

int main() {
    using namespace eqcartan;
    Rng rng(2024);

    const GroupPoint h1 = random_point(rng, 1);
    const GroupPoint h2 = random_point(rng, 2);
    const SkewMatrix x = random_algebra_element(rng);

    CocycleSample s{h1, {}, h2, {}};
    for (auto& v : s.v1) v = random_tangent(rng, h1);
    for (auto& v : s.v2) v = random_tangent(rng, h2);

    std::printf("E13(h; v1, v2, v3) = %+.12f\n", e13_value(h1, s.v1[0], s.v1[1], s.v1[2]));
    std::printf("E22(h; t1, t2)     = %+.12f\n", e22_value(h2, s.v2[0], s.v2[1]));
    std::printf("mu(X)(h; v1)       = %+.12f\n", mu_value(x, h1, s.v1[0]));

    // the same mu through the expression interpreter
    const auto mu_expr = formdsl::interpret(formdsl::parse(formdsl::corpus::kMu), 1);
    std::printf("mu via formdsl     = %+.12f\n", mu_expr(x).evaluate(h1, {s.v1[0]}));

    const CocycleSample samples[] = {s};
    const auto r = equivariant_total_check(e13_form(), e22_form(), mu_form(), x, samples);
    std::printf("|dE13|                   %.2e\n", r.closed_e13);
    std::printf("|i E13 - d mu|           %.2e\n", r.lemma_left);
    std::printf("|i mu|                   %.2e\n", r.lemma_contraction);
    std::printf("|d'E13 + dE22|           %.2e   (other sign %.2e)\n", r.d_plus, r.d_minus);
    std::printf("|d'mu - i E22|           %.2e   (other sign %.2e)\n", r.e_plus, r.e_minus);
}
