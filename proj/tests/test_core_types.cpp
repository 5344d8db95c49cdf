#include "doctest.h"
#include "helpers.hpp"
#include "ionchain/matrix.hpp"
#include "ionchain/types.hpp"

using namespace ionchain;

TEST_CASE("ion count rules") {
    CHECK_VALIDATION(make_config(1, 1.0), ValidationCode::TooFewIons);
    CHECK_VALIDATION(make_config(2, 1.0), ValidationCode::TooFewIons);
    CHECK_VALIDATION(make_config(4, 1.0), ValidationCode::EvenIonCount);
    CHECK_VALIDATION(make_config(27, 1.0), ValidationCode::TooManyIons);
    CHECK_VALIDATION(make_config(-3, 1.0), ValidationCode::TooFewIons);
    CHECK_NOTHROW(make_config(3, 1.0));
    CHECK_NOTHROW(make_config(25, 1.0));
}

TEST_CASE("mass ratio and anisotropy rules") {
    CHECK_VALIDATION(make_config(3, 0.0), ValidationCode::NonPositiveMassRatio);
    CHECK_VALIDATION(make_config(3, -2.0), ValidationCode::NonPositiveMassRatio);
    CHECK_VALIDATION(make_config(3, 1e-4), ValidationCode::MassRatioOutOfRange);
    CHECK_VALIDATION(make_config(3, 2e3), ValidationCode::MassRatioOutOfRange);
    CHECK_VALIDATION(make_config(3, std::nan("")), ValidationCode::NonPositiveMassRatio);
    CHECK_VALIDATION(make_config(3, 1.0, 0.0), ValidationCode::NonPositiveAnisotropy);
    CHECK_VALIDATION(make_config(3, 1.0, -1.0), ValidationCode::NonPositiveAnisotropy);
    CHECK_NOTHROW(make_config(3, 1e-3));
    CHECK_NOTHROW(make_config(3, 1e3));
}

TEST_CASE("config accessors") {
    const auto c = make_config(7, 2.5, 3.0);
    CHECK(c.n() == 7);
    CHECK(c.center() == 3);
    CHECK(c.center_label() == 4);
    CHECK(c.alpha() == 0.5);
    CHECK(c.require_epsilon() == 3.0);
    CHECK_VALIDATION(make_config(7, 2.5).require_epsilon(), ValidationCode::MissingAnisotropy);
    CHECK(c.with_mu(4.0).mu() == 4.0);
    CHECK(c.with_epsilon(5.0).require_epsilon() == 5.0);
    CHECK_VALIDATION(c.with_mu(0.0), ValidationCode::NonPositiveMassRatio);
}

TEST_CASE("branch names round trip") {
    CHECK(parse_branch(to_string(Branch::Axial)) == Branch::Axial);
    CHECK(parse_branch(to_string(Branch::Transverse)) == Branch::Transverse);
    CHECK_VALIDATION(parse_branch("radial"), ValidationCode::BadArgument);
}

TEST_CASE("spectrum frequency accessors") {
    const auto cfg = make_config(3, 1.0, 1.0);
    ModeSpectrum s(Branch::Transverse, cfg, {-4.0, 0.25, 9.0}, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}},
                   {ModeClass::Hot, ModeClass::Cold, ModeClass::Hot});
    CHECK(s.signed_frequency(0) == -2.0);
    CHECK(s.frequency(1) == 0.5);
    CHECK_THROWS_AS(s.frequency(0), DomainError);
    CHECK_FALSE(s.all_stable());
    CHECK(s.cold_count() == 1);
    CHECK(s.multiplicity() == 2);
    CHECK_VALIDATION(ModeSpectrum(Branch::Axial, cfg, {1.0}, {{1, 0, 0}, {0, 1, 0}}, {ModeClass::Hot}),
                     ValidationCode::BadArgument);
}

TEST_CASE("matrix helpers") {
    Matrix m{{1, 2}, {3, 4}};
    CHECK(m.asymmetry() == 1.0);
    CHECK(m.multiply(std::vector<double>{1, 1}) == std::vector<double>{3, 7});
    CHECK(Matrix::identity(2).frobenius_norm() == doctest::Approx(std::sqrt(2.0)));
    const std::vector<double> v{3, -4};
    CHECK(norm2(v) == 5.0);
    CHECK(max_abs(v) == 4.0);
    CHECK(dot(v, v) == 25.0);
}
