// Walks through the r = 2, n = 4 example: residues, Hitchin map, spectral
// curve, a vanishing bracket, and the rank of the Hitchin map at a solved
// point.

#include "hyperpolygon/io.hpp"

#include <iostream>

using namespace hyperpolygon;

int main()
{
    const auto p = fixture_point();
    const auto h = residues(p);
    for (int i = 0; i < h.n; ++i)
        std::cout << "phi_" << i + 1 << " = " << io::to_json(h.residues[i]).dump() << "\n";

    std::cout << "Hitchin map: " << io::to_json(hitchin_map(h)).dump() << "\n";

    const auto cp = spectral_charpoly(twist(h));
    std::cout << "spectral curve: " << io::to_json(cp).dump() << "\n";
    std::cout << io::order_csv(order_check(cp, h.marked_points));

    const BracketObservable<GaussianRational> f{2, GaussianRational(5)}, g{2, GaussianRational(7)};
    std::cout << "{Tr phi(5)^2, Tr phi(7)^2} = " << io::scalar_string(poisson_bracket(p, f, g)) << "\n";

    const auto q = solve_real(3, 6, LengthVector::standard(6), 1);
    const auto rep = jacobian_rank(q);
    std::cout << "rank of the Hitchin map at a solved (3, 6) point: " << rep.rank << " of " << rep.rows << "\n";
    return 0;
}
