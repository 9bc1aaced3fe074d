// Copyright (c) 2026 The expact authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef EXPACT_CF_TABLE_NU14_HPP_
#define EXPACT_CF_TABLE_NU14_HPP_

#include "expact/cf_approx.hpp"

namespace expact {

/// Frozen type-(14,14) CF approximant to e^x on the negative real axis,
/// computed once by cf_poles_residues(14) and validated against the
/// quality bound of the acceptance suite. Lets callers skip the SVD
/// construction; nu=14 is the default degree throughout.
inline const CfRational& cf_default14() {
  static const CfRational table = [] {
    CfRational r;
    r.nu = 14;
    r.omega0 = cd(2.80498230030437959e-14, 0.0);
    r.poles = {
        {-8.89721662833000515e+00, -1.66291430076657107e+01},
        {-3.70298239644166660e+00, -1.36553528487732567e+01},
        {-2.08788058728070380e-01, -1.09906656773903233e+01},
        {2.26949740473783068e+00, -8.46137581541043282e+00},
        {3.99290641604348062e+00, -6.00460787004097973e+00},
        {5.08877803815589047e+00, -3.58869741324189651e+00},
        {5.62252983988766708e+00, -1.19402737226306654e+00},
        {5.62252983988766708e+00, 1.19402737226306654e+00},
        {5.08877803815589047e+00, 3.58869741324189651e+00},
        {3.99290641604348062e+00, 6.00460787004097973e+00},
        {2.26949740473783068e+00, 8.46137581541043282e+00},
        {-2.08788058728070380e-01, 1.09906656773903233e+01},
        {-3.70298239644166660e+00, 1.36553528487732567e+01},
        {-8.89721662833000515e+00, 1.66291430076657107e+01},
    };
    r.residues = {
        {-7.13313907202298776e-05, -1.43800908775194500e-04},
        {9.42414909886668713e-03, 1.71968310136797337e-02},
        {-3.76111529412530676e-01, -3.35357677049300695e-01},
        {4.80482954874818446e+00, 1.32231164506799281e+00},
        {-2.34873969832885194e+01, 5.79953025409005374e+00},
        {4.69112011556102786e+01, -4.56091784277835046e+01},
        {-2.78618750092780196e+01, 1.02079841722067755e+02},
        {-2.78618750092780196e+01, -1.02079841722067755e+02},
        {4.69112011556102786e+01, 4.56091784277835046e+01},
        {-2.34873969832885194e+01, -5.79953025409005374e+00},
        {4.80482954874818446e+00, -1.32231164506799281e+00},
        {-3.76111529412530676e-01, 3.35357677049300695e-01},
        {9.42414909886668713e-03, -1.71968310136797337e-02},
        {-7.13313907202298776e-05, 1.43800908775194500e-04},
    };
    validate_cf(r);
    return r;
  }();
  return table;
}

}  // namespace expact

#endif  // EXPACT_CF_TABLE_NU14_HPP_
