// Root numbers of f1 x f2 x f3 and its Legendre twist for a few prime levels.
#include <tproot/tproot.hpp>

#include <iostream>

int main()
{
    using namespace tproot;
    for (i64 const p : {11, 17, 19, 23}) {
        for (bool const twisted : {false, true}) {
            TripleProductSpec const spec{p, {1, -1, 1}, twisted};
            auto const r = global_root_number(spec);
            std::cout << "p = " << p << (twisted ? " twisted  " : " untwisted") << "  W = " << r.W_global
                      << "  cond = " << global_conductor(spec).to_string() << "  eps_p = " << r.epsilon_p.to_string()
                      << "  delta_p = " << r.delta_p.to_string() << '\n';
        }
    }
}
