// Prints the Betti numbers of X(r, n) for small ranks, with the dimension
// of each space, and compares rank 2 against its closed form.

#include "hyperpolygon/betti.hpp"

#include <cstdio>

using namespace hyperpolygon;

int main()
{
    for (int r = 2; r <= 4; ++r) {
        for (int n = r + 1; n <= r + 6; ++n) {
            const auto p = poincare(r, n);
            const auto dims = dimensions(r, n);
            std::printf("r=%d n=%-2d dim_C=%-3ld  b_0, b_2, ... =", r, n, static_cast<long>(dims.dim_X));
            for (const auto& c : p.poly.coeffs())
                std::printf(" %s", c.get_num().get_str().c_str());
            std::printf("\n");
        }
        std::printf("\n");
    }

    int agree = 0;
    for (int n = 3; n <= 12; ++n)
        agree += poincare(2, n).poly == poincare_rank2(n).poly;
    std::printf("rank 2 closed form agrees for %d of 10 values of n\n", agree);
    return agree == 10 ? 0 : 1;
}
