#include "ionchain/physical.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "ionchain/errors.hpp"
#include "ionchain/modes.hpp"
#include "ionchain/stability.hpp"

namespace ionchain {

namespace {

constexpr double kMassRatioTolerance = 1e-12;
constexpr double kRfConsistencyTolerance = 1e-12;

double angular(double hz) { return 2.0 * constants::kPi * hz; }

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        std::ostringstream os;
        os << what << " = " << v << " must be positive and finite";
        throw ValidationError(ValidationCode::BadArgument, os.str());
    }
}

}  // namespace

void validate_species(const IonSpecies& s) {
    if (s.name.empty()) throw ValidationError(ValidationCode::BadArgument, "species name is empty");
    if (!(s.mass_u > 0.0) || !std::isfinite(s.mass_u))
        throw ValidationError(ValidationCode::BadArgument, "species " + s.name + ": mass must be positive");
    if (s.charge < 1)
        throw ValidationError(ValidationCode::BadArgument, "species " + s.name + ": charge must be >= 1");
}

SpeciesTable SpeciesTable::builtin() {
    SpeciesTable t;
    t.add({"Be9", 9.0122, 1});
    t.add({"Mg24", 23.9850, 1});
    return t;
}

void SpeciesTable::add(IonSpecies species) {
    validate_species(species);
    for (auto& e : entries_) {
        if (e.name == species.name) {
            e = std::move(species);
            return;
        }
    }
    entries_.push_back(std::move(species));
}

void SpeciesTable::load(std::istream& in, const std::string& source) {
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        IonSpecies s;
        if (!(ls >> s.name)) continue;
        std::string extra;
        if (!(ls >> s.mass_u >> s.charge) || (ls >> extra)) {
            throw ValidationError(ValidationCode::MalformedSpeciesFile,
                                  source + ":" + std::to_string(line_no) + ": expected `name mass_u charge`");
        }
        try {
            add(std::move(s));
        } catch (const ValidationError& e) {
            throw ValidationError(ValidationCode::MalformedSpeciesFile,
                                  source + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
}

void SpeciesTable::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open species file '" + path + "'");
    load(in, path);
}

const IonSpecies& SpeciesTable::find(const std::string& name) const {
    for (const auto& e : entries_)
        if (e.name == name) return e;
    throw ValidationError(ValidationCode::UnknownSpecies, "unknown ion species '" + name + "'");
}

double mass_ratio(const IonSpecies& outer, const IonSpecies& center) {
    validate_species(outer);
    validate_species(center);
    return center.mass_u / outer.mass_u;
}

double length_scale(const IonSpecies& species, double axial_frequency_hz) {
    validate_species(species);
    require_positive(axial_frequency_hz, "axial frequency");
    const double q = species.charge_c();
    const double w = angular(axial_frequency_hz);
    return std::cbrt(q * q / (4.0 * constants::kPi * constants::kVacuumPermittivity * species.mass_kg() * w * w));
}

double axial_curvature(const IonSpecies& species, double axial_frequency_hz) {
    validate_species(species);
    require_positive(axial_frequency_hz, "axial frequency");
    const double w = angular(axial_frequency_hz);
    return species.mass_kg() * w * w / species.charge_c();
}

double radial_frequency_from_rf(const IonSpecies& species, double rf_frequency_hz, double rf_strength) {
    validate_species(species);
    require_positive(rf_frequency_hz, "rf frequency");
    require_positive(rf_strength, "rf strength");
    const double w_r0 =
        species.charge_c() * rf_strength / (std::sqrt(2.0) * angular(rf_frequency_hz) * species.mass_kg());
    return w_r0 / (2.0 * constants::kPi);
}

double radial_frequency(const PhysicalTrapParams& trap, const IonSpecies& species) {
    std::optional<double> from_rf;
    if (trap.rf_frequency_hz || trap.rf_strength) {
        if (!trap.rf_frequency_hz || !trap.rf_strength)
            throw ValidationError(ValidationCode::BadArgument, "rf frequency and rf strength must be given together");
        from_rf = radial_frequency_from_rf(species, *trap.rf_frequency_hz, *trap.rf_strength);
    }
    if (trap.radial_frequency_hz) {
        require_positive(*trap.radial_frequency_hz, "radial frequency");
        if (from_rf && std::abs(*from_rf - *trap.radial_frequency_hz) > kRfConsistencyTolerance * *from_rf) {
            std::ostringstream os;
            os << "radial frequency " << *trap.radial_frequency_hz << " Hz disagrees with rf drive value "
               << *from_rf << " Hz";
            throw ValidationError(ValidationCode::BadArgument, os.str());
        }
        return *trap.radial_frequency_hz;
    }
    if (from_rf) return *from_rf;
    throw ValidationError(ValidationCode::MissingAnisotropy,
                          "trap needs a radial frequency or an rf frequency and strength");
}

double anisotropy(const PhysicalTrapParams& trap, const IonSpecies& outer) {
    require_positive(trap.axial_frequency_hz, "axial frequency");
    return radial_frequency(trap, outer) / trap.axial_frequency_hz;
}

double transverse_secular_frequency(const PhysicalTrapParams& trap, const IonSpecies& outer) {
    const double eps = anisotropy(trap, outer);
    const double x2 = eps * eps - kStaticSplit;
    if (!(x2 > 0.0)) throw DomainError("transverse confinement vanishes: epsilon^2 <= 1/2");
    return trap.axial_frequency_hz * std::sqrt(x2);
}

PhysicalSpectrum physical_spectrum(const CrystalConfig& config, const IonSpecies& outer,
                                   const IonSpecies& center, const PhysicalTrapParams& trap, Branch branch) {
    require_positive(trap.axial_frequency_hz, "axial frequency");
    if (outer.charge != center.charge)
        throw ValidationError(ValidationCode::BadArgument, "outer and center ions must carry the same charge");
    const double mu = mass_ratio(outer, center);
    if (std::abs(config.mu() - mu) > kMassRatioTolerance * mu) {
        std::ostringstream os;
        os.precision(15);
        os << "config mu = " << config.mu() << " does not match " << center.name << "/" << outer.name
           << " mass ratio " << mu;
        throw ValidationError(ValidationCode::MassRatioMismatch, os.str());
    }
    CrystalConfig cfg = config;
    if (branch == Branch::Transverse) cfg = config.with_epsilon(anisotropy(trap, outer));

    PhysicalSpectrum out{compute_spectrum(cfg, branch), {}, trap.axial_frequency_hz};
    for (std::size_t k = 0; k < out.spectrum.size(); ++k)
        out.frequencies_hz.push_back(out.spectrum.signed_frequency(k) * trap.axial_frequency_hz);
    return out;
}

LogicModeSpacing logic_mode_spacing(const PhysicalSpectrum& ps) {
    LogicModeSpacing r;
    r.mode = select_logic_mode(ps.spectrum);
    const auto sp = fractional_spacing(ps.spectrum, r.mode);
    r.neighbor = sp.neighbor;
    r.fractional = sp.spacing;
    r.spacing_hz = std::abs(ps.frequencies_hz[sp.neighbor] - ps.frequencies_hz[r.mode]);
    return r;
}

RadialRequirement epsilon_for_ratio(int n, const IonSpecies& outer, const IonSpecies& center,
                                    double axial_frequency_hz, double ratio) {
    require_positive(axial_frequency_hz, "axial frequency");
    if (!(ratio >= 1.0) || !std::isfinite(ratio)) {
        std::ostringstream os;
        os << "epsilon ratio " << ratio << " must be >= 1 (the string is unstable below epsilon_s)";
        throw ValidationError(ValidationCode::BadArgument, os.str());
    }
    RadialRequirement r;
    r.epsilon_s = epsilon_s(n, mass_ratio(outer, center)).epsilon_s;
    r.epsilon = ratio * r.epsilon_s;
    r.radial_frequency_hz = r.epsilon * axial_frequency_hz;
    r.marginal = ratio == 1.0;
    return r;
}

}  // namespace ionchain
