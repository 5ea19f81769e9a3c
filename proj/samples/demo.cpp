#include <iostream>

#include "twistroot/report.hpp"

using namespace twistroot;

int main() {
  // y^2 = x^3 + 27 m^6 + 16 n^6 at (m, n) = (1, 1)
  writeHuman(std::cout, rootNumberSextic(1, 43));

  // quadratic twists of y^2 = x^3 - 91x + 182 follow the sign of t
  const QuadraticBase base(Curve(-91, 182));
  for (int t : {5, -5, 35, -39}) {
    std::cout << "t = " << t << ": W = " << rootNumberQuadraticAbsolute(base, t).total << '\n';
  }
  std::cout << name(constancyCriterion(base.curve()).overall) << '\n';

  const auto p = profileQuartic(1, 3 * quarticModulus);
  std::cout << "quartic a = 1: " << p.classes.size() << " classes, " << p.mixedCount()
            << " mixed\n";
}
