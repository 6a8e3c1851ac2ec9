// SL2 orbit census and diamond decomposition for small primes.
#include <tproot/tproot.hpp>

#include <iostream>

int main()
{
    using namespace tproot;
    for (i64 const p : {5, 7, 11}) {
        auto const table = sl2_orbit_table(p);
        auto const diamond = diamond_orbit_decomposition(p);
        auto const fod = field_of_definition_report(p);
        std::cout << "p = " << p << ": " << table.orbits.size() << " SL2-orbits ("
                  << table.nondegenerate_orbit_count() << " nondegenerate), " << diamond.representatives.size()
                  << " diamond orbits, K = " << fod.field << ", S3 " << to_string(fod.s3) << '\n';
    }
}
