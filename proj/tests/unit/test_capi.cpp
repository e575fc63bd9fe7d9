#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>

#include "tentlab/tentlab.h"

namespace {

tl_backend backend(const char* name) {
  tl_backend b{};
  REQUIRE(tl_parse_backend(name, 50, &b) == TL_OK);
  return b;
}

}  // namespace

TEST_CASE("library basics") {
  CHECK(std::string(tl_version()) == "0.1.0");
  CHECK(std::string(tl_status_name(TL_ERR_PARSE)) != "");
  tl_backend b{};
  CHECK(tl_parse_backend("decimal:70", 50, &b) == TL_OK);
  CHECK(b.kind == TL_DECIMAL);
  CHECK(b.precision_digits == 70);
  CHECK(tl_parse_backend("quad", 50, &b) == TL_ERR_PARSE);
  CHECK(std::strlen(tl_last_error()) > 0);
  CHECK(tl_parse_backend(nullptr, 50, &b) == TL_ERR_INVALID_ARGUMENT);
}

TEST_CASE("scalars") {
  tl_scalar* s = nullptr;
  REQUIRE(tl_scalar_parse("1.5", backend("rational"), &s) == TL_OK);
  CHECK(std::string(tl_scalar_text(s)) == "3/2");
  CHECK(tl_scalar_value(s) == 1.5);
  tl_scalar_free(s);
  CHECK(tl_scalar_parse("1.5x", backend("rational"), &s) == TL_ERR_PARSE);
  tl_scalar_free(nullptr);
}

TEST_CASE("tent map and cycles") {
  tl_scalar* s = nullptr;
  REQUIRE(tl_tent_step("3/2", "2/5", backend("rational"), 2, &s) == TL_OK);
  CHECK(std::string(tl_scalar_text(s)) == "3/5");
  tl_scalar_free(s);
  CHECK(tl_tent_step("3", "0.5", backend("binary64"), 1, &s) == TL_ERR_OUT_OF_DOMAIN);

  char symbols[8];
  tl_scalar* slope = nullptr;
  REQUIRE(tl_itinerary("3/2", "6/13", backend("rational"), 2, symbols, &slope) == TL_OK);
  CHECK(std::string(symbols) == "LR");
  CHECK(std::string(tl_scalar_text(slope)) == "-9/4");
  tl_scalar_free(slope);

  tl_scalar *lo = nullptr, *hi = nullptr;
  REQUIRE(tl_two_cycle("1.5", backend("rational"), &lo, &hi) == TL_OK);
  CHECK(std::string(tl_scalar_text(lo)) == "6/13");
  CHECK(std::string(tl_scalar_text(hi)) == "9/13");
  tl_scalar_free(lo);
  tl_scalar_free(hi);

  tl_cycles* c = nullptr;
  REQUIRE(tl_enumerate_cycles("3/2", backend("rational"), 2, &c) == TL_OK);
  REQUIRE(tl_cycles_count(c) == 1);
  CHECK(tl_cycles_period(c) == 2);
  CHECK(std::string(tl_cycles_point_text(c, 0, 1)) == "9/13");
  CHECK(std::string(tl_cycles_itinerary(c, 0)) == "LR");
  CHECK(std::string(tl_cycles_multiplier_text(c, 0)) == "-9/4");
  tl_cycles_free(c);

  double t = 0;
  long poly[8];
  size_t n = 0;
  REQUIRE(tl_onset_threshold(3, &t, poly, 8, &n) == TL_OK);
  CHECK(n == 3);
  CHECK(t == doctest::Approx((1 + std::sqrt(5.0)) / 2));
  CHECK(tl_onset_threshold(4, &t, poly, 8, &n) == TL_ERR_UNSUPPORTED);
}

TEST_CASE("stabilization through handles") {
  tl_coefficients* c = nullptr;
  REQUIRE(tl_build_coefficients("6/5", backend("rational"), &c) == TL_OK);
  CHECK(std::string(tl_coefficients_norm_text(c)).find('/') != std::string::npos);
  tl_series* s = nullptr;
  REQUIRE(tl_stabilize("3/2", "0.4", c, 2, 20, &s) == TL_OK);
  CHECK(tl_series_size(s) == 21);
  CHECK(std::string(tl_series_text(s, 20)) == "3/5");
  tl_series_free(s);
  CHECK(tl_stabilize("3/2", "0.4", c, 2, 3, &s) == TL_ERR_INVALID_ARGUMENT);

  tl_equilibria* e = nullptr;
  REQUIRE(tl_classify_equilibria("3/2", 2, c, 0, &e) == TL_OK);
  REQUIRE(tl_equilibria_count(e) == 3);
  CHECK(std::string(tl_equilibria_point_text(e, 1)) == "3/5");
  CHECK(tl_equilibria_stable(e, 0) == 1);
  CHECK(tl_equilibria_stable(e, 1) == 0);
  tl_equilibria_free(e);
  tl_coefficients_free(c);

  REQUIRE(tl_build_coefficients("1.2", backend("binary64"), &c) == TL_OK);
  double mags[6], radius = 0;
  REQUIRE(tl_companion_spectrum(c, -2.25, mags, &radius) == TL_OK);
  CHECK(radius < 1.0);
  CHECK(radius == mags[0]);
  tl_coefficients_free(c);
  CHECK(tl_build_coefficients("1", backend("binary64"), &c) == TL_ERR_OUT_OF_DOMAIN);

  tl_outcome_kind kind{};
  double dist = 0;
  REQUIRE(tl_classify_value("1.5", "0.25", backend("binary64"), 1e-3, &kind, &dist) == TL_OK);
  CHECK(kind == TL_UNRESOLVED);
  CHECK(std::string(tl_outcome_name(TL_CYCLE_HIGH)) == "cycle_high");
}

TEST_CASE("sweep and escape") {
  tl_sweep_config cfg{"uniform:10", "1.5", "1.2", backend("binary64"), 2, 50, 1e-3, 2};
  tl_sweep* sw = nullptr;
  REQUIRE(tl_sweep_run(&cfg, &sw) == TL_OK);
  CHECK(tl_sweep_size(sw) == 11);
  CHECK(tl_sweep_count(sw, TL_FIXED_POINT) == 2);
  CHECK(std::string(tl_sweep_x0_text(sw, 4)) == "0.4");
  CHECK(tl_sweep_outcome(sw, 4) == TL_FIXED_POINT);
  tl_sweep_free(sw);
  cfg.net = "hexagonal:3";
  CHECK(tl_sweep_run(&cfg, &sw) == TL_ERR_PARSE);

  tl_coefficients* c = nullptr;
  REQUIRE(tl_build_coefficients("1.2", backend("binary64"), &c) == TL_OK);
  tl_series* s = nullptr;
  REQUIRE(tl_stabilize("1.5", "0.4", c, 2, 300, &s) == TL_OK);
  int found = 0;
  tl_escape e{};
  REQUIRE(tl_detect_escape(s, nullptr, &found, &e) == TL_OK);
  CHECK(found == 1);
  CHECK(e.flat_value == doctest::Approx(0.6));
  CHECK(e.escape_index > e.flat_end - 1);
  tl_series_free(s);
  tl_coefficients_free(c);

  tl_series* orbit = nullptr;
  tl_scalar* ref = nullptr;
  REQUIRE(tl_sqrt2_experiment("1.41421356237309504880168872420969807856967187537694807317", 70, 20, nullptr,
                              &orbit, &ref, &found, &e) == TL_OK);
  CHECK(tl_series_size(orbit) == 21);
  CHECK(std::string(tl_scalar_text(ref)).rfind("0.58578643762690", 0) == 0);
  tl_series_free(orbit);
  tl_scalar_free(ref);
}

TEST_CASE("recurrence") {
  tl_series* s = nullptr;
  REQUIRE(tl_recurrence("1", "1", backend("rational"), 10, &s) == TL_OK);
  CHECK(std::string(tl_series_text(s, 10)) == "89/1");
  tl_series_free(s);

  int found = 0;
  long index = 0;
  REQUIRE(tl_predict_escape("1", "-0.618033988749", backend("binary64"), 1.0, &found, &index) == TL_OK);
  CHECK(found == 1);
  CHECK(index == 60);

  REQUIRE(tl_recurrence("1", "-0.618033988749", backend("binary64"), 100, &s) == TL_OK);
  size_t first = 0;
  REQUIRE(tl_first_exceedance(s, 1.0, &found, &first) == TL_OK);
  CHECK(first == 60);
  tl_series_free(s);

  tl_eigen e{};
  REQUIRE(tl_decompose("1", "1", backend("binary64"), &e) == TL_OK);
  CHECK(e.a_u * e.v_u[0] + e.a_s * e.v_s[0] == doctest::Approx(1.0));
  REQUIRE(tl_eigen_basis(&e) == TL_OK);
  CHECK(e.lambda_u * e.lambda_s == doctest::Approx(-1.0));
}
