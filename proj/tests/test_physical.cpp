#include <cmath>
#include <sstream>

#include "doctest.h"
#include "helpers.hpp"
#include "ionchain/physical.hpp"

using namespace ionchain;

namespace {

const SpeciesTable kTable = SpeciesTable::builtin();
const IonSpecies& be() { return kTable.find("Be9"); }
const IonSpecies& mg() { return kTable.find("Mg24"); }

PhysicalTrapParams axial_trap(double hz) {
    PhysicalTrapParams t;
    t.axial_frequency_hz = hz;
    return t;
}

}  // namespace

TEST_CASE("species table") {
    CHECK(be().mass_u == 9.0122);
    CHECK(mg().mass_u == 23.9850);
    CHECK_VALIDATION(kTable.find("Ca40"), ValidationCode::UnknownSpecies);

    SpeciesTable t = SpeciesTable::builtin();
    std::istringstream in("# extra species\nCa40 39.9626 1\n\nBe9 9.0 1  # override\n");
    t.load(in);
    CHECK(t.entries().size() == 3);
    CHECK(t.find("Ca40").mass_u == 39.9626);
    CHECK(t.find("Be9").mass_u == 9.0);

    std::istringstream bad("Sr88 87.9\n");
    CHECK_VALIDATION(t.load(bad), ValidationCode::MalformedSpeciesFile);
    std::istringstream extra("Sr88 87.9 1 junk\n");
    CHECK_VALIDATION(t.load(extra), ValidationCode::MalformedSpeciesFile);
    std::istringstream negative("Sr88 -87.9 1\n");
    CHECK_VALIDATION(t.load(negative), ValidationCode::MalformedSpeciesFile);
    CHECK_THROWS_AS(t.load_file("/nonexistent/species.txt"), IoError);
}

TEST_CASE("length scale and curvature") {
    const double l = length_scale(be(), 10e6);
    CHECK(l == doctest::Approx(1.5747e-6).epsilon(1e-4));
    // l^3 = q / (4 pi eps0 a0)
    const double a0 = axial_curvature(be(), 10e6);
    CHECK(l * l * l ==
          doctest::Approx(be().charge_c() / (4 * constants::kPi * constants::kVacuumPermittivity * a0)).epsilon(1e-12));
    CHECK_VALIDATION(length_scale(be(), 0.0), ValidationCode::BadArgument);
}

TEST_CASE("radial frequency sources") {
    const double fr = radial_frequency_from_rf(be(), 100e6, 2e9);
    PhysicalTrapParams t = axial_trap(1e6);
    t.rf_frequency_hz = 100e6;
    t.rf_strength = 2e9;
    CHECK(radial_frequency(t, be()) == fr);
    // The pseudopotential scales as 1/mass.
    CHECK(radial_frequency(t, mg()) / fr == doctest::Approx(be().mass_u / mg().mass_u).epsilon(1e-14));
    t.radial_frequency_hz = fr;
    CHECK(radial_frequency(t, be()) == fr);
    t.radial_frequency_hz = 1.01 * fr;
    CHECK_VALIDATION(radial_frequency(t, be()), ValidationCode::BadArgument);
    t.rf_strength.reset();
    CHECK_VALIDATION(radial_frequency(t, be()), ValidationCode::BadArgument);
    CHECK_VALIDATION(radial_frequency(axial_trap(1e6), be()), ValidationCode::MissingAnisotropy);

    PhysicalTrapParams d = axial_trap(1e6);
    d.radial_frequency_hz = 3e6;
    CHECK(anisotropy(d, be()) == 3.0);
    CHECK(transverse_secular_frequency(d, be()) == doctest::Approx(1e6 * std::sqrt(8.5)));
}

TEST_CASE("physical spectrum") {
    const double mu = mass_ratio(be(), mg());
    const auto ps = physical_spectrum(make_config(3, mu), be(), mg(), axial_trap(10e6), Branch::Axial);
    CHECK(ps.frequencies_hz[0] == doctest::Approx(ps.spectrum.frequency(0) * 10e6));
    const auto lm = logic_mode_spacing(ps);
    CHECK(ps.spectrum.classification(lm.mode) == ModeClass::Cold);
    CHECK(lm.spacing_hz == doctest::Approx(1.6e6).epsilon(0.03));

    CHECK_VALIDATION(physical_spectrum(make_config(3, 2.0), be(), mg(), axial_trap(10e6), Branch::Axial),
                     ValidationCode::MassRatioMismatch);
    CHECK_VALIDATION(physical_spectrum(make_config(3, mu), be(), mg(), axial_trap(10e6), Branch::Transverse),
                     ValidationCode::MissingAnisotropy);
    const IonSpecies doubly{"Mg24pp", 23.9850, 2};
    CHECK_VALIDATION(physical_spectrum(make_config(3, mu), be(), doubly, axial_trap(10e6), Branch::Axial),
                     ValidationCode::BadArgument);
}

TEST_CASE("radial requirement") {
    const auto r = epsilon_for_ratio(3, be(), mg(), 10e6, 1.1);
    CHECK(r.radial_frequency_hz == doctest::Approx(27.6e6).epsilon(0.005));
    CHECK_FALSE(r.marginal);
    CHECK(epsilon_for_ratio(3, be(), mg(), 10e6, 1.0).marginal);
    CHECK_VALIDATION(epsilon_for_ratio(3, be(), mg(), 10e6, 0.9), ValidationCode::BadArgument);
}
