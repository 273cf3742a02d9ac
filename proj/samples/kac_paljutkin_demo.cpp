// Classifies the non-trivial quasitriangular structures on the 8-dimensional
// Kac-Paljutkin algebra and certifies each one.
#include <iostream>

#include "hopfz2/hopfz2.hpp"

int main() {
  using namespace hopfz2;
  ExtensionData d = make_kac_paljutkin();
  std::cout << "Hopf axioms: " << (verify_hopf_axioms(d).ok() ? "ok" : "FAILED") << "\n";
  for (const auto& c : classify_K(d)) {
    std::cout << "beta1=" << c.params[0].str() << " beta2=" << c.params[1].str() << " delta=" << c.params[2].str()
              << "  quasitriangular=" << verify_quasitriangular(d, c.R).ok() << " qybe=" << verify_qybe(d, c.R).ok()
              << " phi-symmetric=" << is_phi_symmetric(d, c.R) << "\n";
  }
}
