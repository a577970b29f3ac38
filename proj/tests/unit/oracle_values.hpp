#pragma once

// Generated by tests/oracles/oracle.py; do not edit.

#include <cstddef>

namespace oracle {

inline constexpr bool kVirasoroAxioms = true;
inline constexpr bool kRank2Axioms = true;
inline constexpr const char* kBrokenSkewResidual = "(-d)*L";
inline constexpr const char* kBrokenJacobiResidual = "(-d*x0 - 3*x0^2 - 3*x0*x1)*L";
inline constexpr const char* kRank2Alpha1Action12 = "(1)*e2";
inline constexpr const char* kRank2NProduct0 = "(1)*e2";
inline constexpr std::size_t kVirasoroCenterBound3 = 0;
inline constexpr std::size_t kRank2CenterBound2 = 0;
inline constexpr std::size_t kAbelian2CenterBound1 = 4;
inline constexpr std::size_t kVirasoroCochainsN0B2 = 3;
inline constexpr std::size_t kVirasoroKernelN0B2 = 0;
inline constexpr std::size_t kVirasoroImageN0B2 = 0;
inline constexpr std::size_t kVirasoroCochainsN1B2 = 6;
inline constexpr std::size_t kVirasoroKernelN1B2 = 2;
inline constexpr std::size_t kVirasoroImageN1B2 = 2;
inline constexpr std::size_t kVirasoroCochainsN2B2 = 3;
inline constexpr std::size_t kVirasoroKernelN2B2 = 2;
inline constexpr std::size_t kVirasoroImageN2B2 = 2;
inline constexpr std::size_t kAbelian1CochainsN1B1 = 3;
inline constexpr std::size_t kAbelian1KernelN1B1 = 3;
inline constexpr std::size_t kAbelian3ZeroCochainsN1B1 = 3;
inline constexpr std::size_t kAbelian3ZeroKernelN1B1 = 3;
inline constexpr std::size_t kAbelian1DerK0B1 = 3;
inline constexpr std::size_t kVirasoroGDerK0B2 = 5;
inline constexpr std::size_t kVirasoroQDerK0B2 = 5;
inline constexpr std::size_t kVirasoroDerK0B2 = 2;
inline constexpr std::size_t kVirasoroCK0B2 = 0;
inline constexpr std::size_t kVirasoroQCK0B2 = 0;
inline constexpr std::size_t kVirasoroZDerK0B2 = 0;
inline constexpr std::size_t kVirasoroGDerK1B2 = 5;
inline constexpr std::size_t kVirasoroQDerK1B2 = 5;
inline constexpr std::size_t kVirasoroDerK1B2 = 2;
inline constexpr std::size_t kVirasoroCK1B2 = 0;
inline constexpr std::size_t kVirasoroQCK1B2 = 0;
inline constexpr std::size_t kVirasoroZDerK1B2 = 0;
inline constexpr std::size_t kRank2GDerK0B2 = 8;
inline constexpr std::size_t kRank2QDerK0B2 = 8;
inline constexpr std::size_t kRank2DerK0B2 = 5;
inline constexpr std::size_t kRank2CK0B2 = 3;
inline constexpr std::size_t kRank2QCK0B2 = 3;
inline constexpr std::size_t kRank2ZDerK0B2 = 0;
inline constexpr const char* kRank2IdNijenhuis11 = "0";
inline constexpr const char* kRank2IdNijenhuis12 = "(1)*e2";
inline constexpr const char* kRank2IdNijenhuis21 = "(-1)*e2";
inline constexpr const char* kRank2IdNijenhuis22 = "0";
inline constexpr const char* kVirasoroPsiSpecialized = "(d^3 + 6*d^2*x0 + 12*d*x0^2 + 8*x0^3)*L";
inline constexpr const char* kVirasoroPsiT1Jacobi = "(3*d^3*x0 - 3*d^3*x1 + 9*d^2*x0^2 - 9*d^2*x1^2 + 6*d*x0^3 + 9*d*x0^2*x1 - 9*d*x0*x1^2 - 6*d*x1^3)*L";

}  // namespace oracle
