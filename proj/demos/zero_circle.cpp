// Walks the zeros and probe points on one circle and prints what f does there:
// an exact unit translation at each zero, a huge jump at each probe.

#include <cstdio>

#include "bakerlab/bakerlab.hpp"

int main() {
  using namespace bakerlab;
  const ParamSeq p = make_toy("steep");
  const DerivedParams d = derive(p);
  const std::size_t k = 3;
  std::printf("k = %zu, r_k = %g, s_k = %g, ln T_k = %.6f\n", k, p.r(k), d.s_at(k), d.logT_at(k));
  std::printf("%4s  %24s  %14s  %12s\n", "nu", "f(a) - a", "ln|f(b)|", "Re h(b)/T_k");
  for (std::int64_t nu = 0; nu < p.n(k); nu += 8) {
    const ProbePoint pp = probe_point(k, nu, p, d);
    const Cartesian step = *eval_f(pp.a, p).cartesian - pp.a;
    const EvalResult fb = eval_f(pp.b, p);
    std::printf("%4lld  (%10.3g, %10.3g)  %14.6g  %12.6f\n", static_cast<long long>(nu), step.real(), step.imag(),
                fb.value.logmod(), probe_ratio(pp, p).ratio);
  }
}
