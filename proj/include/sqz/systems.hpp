#pragma once

// Catalog of quadratic-potential systems V(x,t) = g2(t) x^2 + g1(t) x + g0(t)
// in units hbar = m = 1.

#include "sqz/expr.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace sqz {

using expr::CoefficientFn;

enum class SystemKind { HO, FP, LP, DHO, RO, custom };

std::string_view to_string(SystemKind kind);
SystemKind parse_system_kind(std::string_view name);

inline bool is_catalog(SystemKind k) { return k != SystemKind::custom; }

// Construction parameters. Only the ones meaningful for a kind may be set:
//   HO: omega   FP: -   LP: kappa   DHO: omega, kappa   RO: Omega
//   custom: g2 (required), g1, g0 expressions in t
struct SystemParams {
    std::optional<double> omega;
    std::optional<double> Omega;
    std::optional<double> kappa;
    std::optional<std::string> g2;
    std::optional<std::string> g1;
    std::optional<std::string> g0;
};

class SystemSpec {
public:
    SystemKind kind() const { return kind_; }
    double omega() const { return omega_; }
    double Omega() const { return Omega_; }
    double kappa() const { return kappa_; }

    const CoefficientFn& g2() const { return g2_; }
    const CoefficientFn& g1() const { return g1_; }
    const CoefficientFn& g0() const { return g0_; }

    // g1(0), the drive strength at the origin of time.
    double drive_at_origin() const { return drive0_; }

    double potential(double x, double tau) const {
        return (g2_.eval(tau) * x + g1_.eval(tau)) * x + g0_.eval(tau);
    }

    std::string describe() const;

private:
    friend SystemSpec make_system(SystemKind kind, const SystemParams& params);
    SystemSpec() = default;

    SystemKind kind_ = SystemKind::FP;
    double omega_ = 0.0;
    double Omega_ = 0.0;
    double kappa_ = 0.0;
    CoefficientFn g2_, g1_, g0_;
    double drive0_ = 0.0;
};

SystemSpec make_system(SystemKind kind, const SystemParams& params = {});

struct PhasePoint {
    double x = 0.0;
    double p = 0.0;
};

// Closed-form trajectories of the catalog systems (LP and DHO with constant
// drive kappa/2), used as regression targets for the generic propagation.
PhasePoint reference_expectations(const SystemSpec& system, PhasePoint initial, double tau);

} // namespace sqz
