// Pick a curve with full 5-torsion over a small extension and evaluate o(E; C1, C2, C3).
#include <tproot/tproot.hpp>

#include <iostream>

int main()
{
    using namespace tproot;
    u64 const p = 5;
    auto const sel = select_curve(p);
    EcCurve const E(sel.manifest.curve, sel.torsion.field);
    auto const& basis = sel.torsion.basis;
    std::cout << sel.manifest.curve.to_string() << ", E[" << p << "] over F_" << sel.manifest.curve.ell << "^"
              << sel.manifest.k << "\nP = " << basis.P.to_string() << "\nQ = " << basis.Q.to_string()
              << "\ne(P,Q) = " << basis.zeta.to_string() << '\n';
    for (i64 const a : {1, 2}) {
        MarkingTriple const t(static_cast<i64>(p), {{{1, 0}, {0, 1}, {-a, -1}}});
        auto const r = o_det_bridge(E, basis, t);
        std::cout << t.to_string() << ": o = " << to_string(r.o.cls) << ", bridge " << (r.passed ? "ok" : "FAILED")
                  << '\n';
    }
}
