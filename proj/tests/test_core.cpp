#include <doctest.h>

#include <cmath>
#include <random>

#include "isospec/error.hpp"
#include "isospec/grid.hpp"
#include "isospec/serialize.hpp"
#include "isospec/spline.hpp"
#include "isospec/types.hpp"

using namespace isospec;

namespace {

SpectralDatum datum(int n, double mu, double a = 1.0, double kappa = 1.0) {
  return SpectralDatum{n, mu, a, std::nullopt, kappa, kappa};
}

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no isospec::Error thrown");
  return ErrorKind::consistency;
}

}  // namespace

TEST_CASE("grid nodes and step") {
  const Grid g(2000);
  CHECK(g.size() == 2001);
  CHECK(g.step() == doctest::Approx(pi / 2000));
  CHECK(g.node(0) == 0.0);
  CHECK(g.node(2000) == pi);
  CHECK(Grid(4000).refines(g));
  CHECK_FALSE(Grid(3000).refines(g));
  CHECK(kind_of([] { Grid bad(8); }) == ErrorKind::schema);
}

TEST_CASE("robin angles stay inside (0, pi)") {
  const RobinAngles r(pi / 3, 2 * pi / 3);
  CHECK(r.cot_alpha() == doctest::Approx(1 / std::sqrt(3.0)));
  CHECK(r.cot_beta() == doctest::Approx(-1 / std::sqrt(3.0)));
  CHECK(kind_of([] { RobinAngles(0.0, 1.0); }) == ErrorKind::schema);
  CHECK(kind_of([] { RobinAngles(1.0, pi); }) == ErrorKind::schema);
  CHECK(arccot(1.0) == pi / 4);
  CHECK(arccot(-1e12) == doctest::Approx(pi));
}

TEST_CASE("potential validation and reflection") {
  const Grid g(64);
  const Potential q = Potential::sample(g, [](double x) { return x; });
  CHECK(q.min() == 0.0);
  CHECK(q.max() == pi);
  const Potential r = q.reflected();
  for (int i = 0; i <= 64; ++i) CHECK(r.values()[static_cast<std::size_t>(i)] == doctest::Approx(pi - g.node(i)));
  CHECK(q.half_samples().size() == 129);
  CHECK(q.half_samples()[1] == doctest::Approx(g.step() / 2));
  CHECK(kind_of([&] { Potential(g, std::vector<double>(10, 0.0)); }) == ErrorKind::schema);
  std::vector<double> nan(65, 0.0);
  nan[3] = std::nan("");
  CHECK(kind_of([&] { Potential(g, nan); }) == ErrorKind::schema);
}

TEST_CASE("operator reflection swaps the angles") {
  const Grid g(32);
  const OperatorSpec op{Potential::sample(g, [](double x) { return x * x; }), RobinAngles(0.4, 1.9)};
  const OperatorSpec r = op.reflected();
  CHECK(r.alpha() == doctest::Approx(pi - 1.9));
  CHECK(r.beta() == doctest::Approx(pi - 0.4));
  CHECK(r.reflected().potential.values()[5] == doctest::Approx(op.potential.values()[5]));
}

TEST_CASE("natural spline reproduces linear data and resamples") {
  const Grid coarse(32), fine(96);
  std::vector<double> v(coarse.size());
  for (int i = 0; i <= 32; ++i) v[static_cast<std::size_t>(i)] = 2.0 * coarse.node(i) - 1.0;
  const NaturalSpline s(coarse, v);
  CHECK(s(1.2345) == doctest::Approx(2 * 1.2345 - 1).epsilon(1e-12));
  CHECK(s(-1.0) == doctest::Approx(-1.0));  // clamped
  const auto up = resample(coarse, v, fine);
  CHECK(up[96] == doctest::Approx(2 * pi - 1));
  const auto down = resample(fine, up, coarse);
  for (std::size_t i = 0; i < v.size(); ++i) {
    CHECK(down[i] == up[3 * i]);  // shared nodes are copied
    CHECK(down[i] == doctest::Approx(v[i]).epsilon(1e-13));
  }
}

TEST_CASE("spectrum table invariants") {
  SpectrumTable t;
  t.push_back(datum(0, 0.0));
  t.push_back(datum(1, 1.0));
  CHECK(t.n_max() == 1);
  CHECK(t.eigenvalues() == std::vector<double>{0.0, 1.0});
  CHECK(kind_of([&] { t.push_back(datum(3, 9.0)); }) == ErrorKind::schema);
  CHECK(kind_of([&] { t.push_back(datum(2, 1.0)); }) == ErrorKind::schema);
  CHECK(kind_of([&] { t.push_back(datum(2, 4.0, -1.0)); }) == ErrorKind::schema);
  CHECK(kind_of([&] { t.push_back(datum(2, 4.0, 1.0, 0.0)); }) == ErrorKind::schema);
  CHECK(kind_of([&] { (void)t.at(5); }) == ErrorKind::coverage);
}

TEST_CASE("perturbation sequences") {
  const PerturbationSeq c({0.0, 0.5, 0.0, -0.25, 0.0});
  CHECK(c.support() == std::vector<int>{1, 3});
  CHECK(c.last_index() == 3);
  CHECK(c.sum() == 0.25);
  CHECK(c[100] == 0.0);
  CHECK(PerturbationSeq().is_zero());

  SpectrumTable t;
  for (int n = 0; n <= 3; ++n) t.push_back(datum(n, n * n, 2.0));
  CHECK_NOTHROW(c.check_admissible(t));
  try {
    PerturbationSeq({0.0, -0.5}).check_admissible(t);
    FAIL("expected admissibility error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::admissibility);
    CHECK(e.index() == 1);
  }
  CHECK(kind_of([&] { PerturbationSeq({0, 0, 0, 0, 0, 1.0}).check_admissible(t); }) == ErrorKind::coverage);
}

TEST_CASE("errors carry kind, index and stage") {
  const Error e(ErrorKind::admissibility, "bad c", 4);
  CHECK(std::string(e.what()) == "admissibility error: bad c");
  try {
    rethrow_with_stage(e, "gelfand-levitan");
  } catch (const Error& s) {
    CHECK(s.kind() == ErrorKind::admissibility);
    CHECK(s.index() == 4);
    CHECK(s.message() == "[gelfand-levitan] bad c");
  }
}

TEST_CASE("operator document round trip is exact") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  std::uniform_real_distribution<double> ang(1e-3, pi - 1e-3);
  for (int trial = 0; trial < 25; ++trial) {
    const Grid g(16 + 2 * static_cast<int>(rng() % 50));
    std::vector<double> v(g.size());
    for (double& x : v) x = u(rng) * std::pow(10.0, static_cast<int>(rng() % 9) - 4);
    const OperatorSpec op{Potential(g, v), RobinAngles(ang(rng), ang(rng))};
    const OperatorSpec back = io::operator_from_json(io::parse(io::dump(io::to_json(op))));
    CHECK(back == op);
  }
}

TEST_CASE("spectrum and coefficient documents round trip") {
  SpectrumTable t;
  t.push_back(SpectralDatum{0, -0.1234567890123, 3.3, 2.2, 1.1, 1.1});
  t.push_back(SpectralDatum{1, 1.000000000001, 1.5, 1.7, -0.9, -0.9});
  CHECK(io::spectrum_from_json(io::parse(io::dump(io::to_json(t)))) == t);
  const PerturbationSeq c({0.0, 0.1, 0.0, -1.0 / 3.0});
  CHECK(io::coefficients_from_json(io::parse(io::dump(io::to_json(c)))) == c);
}

TEST_CASE("schema errors name the field") {
  auto doc = io::to_json(OperatorSpec{Potential::zero(Grid(16)), RobinAngles(1.0, 1.0)});
  doc["beta"] = 4.0;
  try {
    (void)io::operator_from_json(doc);
    FAIL("expected schema error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::schema);
    CHECK(e.message().find("beta") != std::string::npos);
  }
  doc["beta"] = 1.0;
  doc["potential"].erase(0);
  CHECK(kind_of([&] { (void)io::operator_from_json(doc); }) == ErrorKind::schema);
  CHECK(kind_of([] { (void)io::parse("{not json"); }) == ErrorKind::schema);
  CHECK(kind_of([] { (void)io::coefficients_from_json(io::parse(R"([{"n":1,"c":0.1},{"n":1,"c":0.2}])")); }) ==
        ErrorKind::schema);
  CHECK(kind_of([] { (void)io::read_json("/nonexistent/op.json"); }) == ErrorKind::io);
}

TEST_CASE("csv exports") {
  const Potential q = Potential::zero(Grid(16));
  const std::string csv = io::potential_csv(q);
  CHECK(csv.rfind("x,q\n0,0\n", 0) == 0);
  CHECK(io::format_double(0.1) == "0.10000000000000001");
  SpectrumTable t;
  t.push_back(datum(0, 0.5, 2.0, -1.0));
  CHECK(io::spectrum_csv(t) == "n,mu,a,b,kappa\n0,0.5,2,,-1\n");
}
