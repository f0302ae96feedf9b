#pragma once

// Generated by tests/oracles/generate.py; do not edit.

namespace oracle {

inline constexpr double kLogGamma3p4iRe = -1.7566267846037842;
inline constexpr double kLogGamma3p4iIm = 4.742664438034658;
inline constexpr double kLogGammaNegRe = -1.4941873089113575;
inline constexpr double kLogGammaNegIm = -8.646475682803377;
inline constexpr double kG2012_half = 0.1633219311622765;
inline constexpr double kG2012_mu2 = 0.1633219311622765;
inline constexpr double kG3023 = 0.07401270311383491;
inline constexpr double kG2112 = 0.2298660864165697;
inline constexpr double kG1221 = 0.5877866649021191;
inline constexpr double kFoxH1001 = 0.479416423859306;
inline constexpr double kDefaultA0 = 0.3900061737674387;
inline constexpr double kDefaultMuSq = 5.231880000424434;
inline constexpr double kDefaultOmegaE = 0.1143665160834284;
inline constexpr double kH1Points[] = {0.001, 0.05, 0.1, 0.2, 0.3, 0.5};
inline constexpr double kH1Pdf[] = {3.3591018369054337, 1.5128515728151226, 0.895902526626781, 4.1416991809388675, 0.5608705448260874, 0.0019463049192343562};

}  // namespace oracle
