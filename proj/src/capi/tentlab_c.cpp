#include "tentlab/tentlab.h"

#include <algorithm>
#include <new>
#include <string>
#include <vector>

#include "tentlab/cycles.hpp"
#include "tentlab/experiments.hpp"
#include "tentlab/rabbits.hpp"
#include "tentlab/stabilizer.hpp"
#include "tentlab/tent.hpp"

using namespace tentlab;

struct tl_scalar {
  Scalar value;
  std::string text;
};

struct tl_series {
  std::vector<Scalar> values;
  std::vector<std::string> texts;
};

struct tl_cycles {
  int period = 0;
  std::vector<Cycle> cycles;
  std::vector<std::vector<std::string>> point_texts;
  std::vector<std::string> multiplier_texts;
};

struct tl_coefficients {
  Coefficients coeffs;
  std::vector<std::string> texts;
  std::string norm_text;
};

struct tl_equilibria {
  std::vector<EquilibriumReport> reports;
  std::vector<std::string> point_texts;
  std::vector<std::string> slope_texts;
};

struct tl_sweep {
  SweepResult result;
  std::vector<std::string> x0_texts;
  std::vector<std::string> final_texts;
};

namespace {

thread_local std::string last_error;

tl_status status_of(Errc code) {
  switch (code) {
    case Errc::invalid_argument:
      return TL_ERR_INVALID_ARGUMENT;
    case Errc::parse_error:
      return TL_ERR_PARSE;
    case Errc::backend_mismatch:
      return TL_ERR_BACKEND_MISMATCH;
    case Errc::out_of_domain:
      return TL_ERR_OUT_OF_DOMAIN;
    case Errc::unsupported:
      return TL_ERR_UNSUPPORTED;
    case Errc::no_convergence:
      return TL_ERR_NO_CONVERGENCE;
  }
  return TL_ERR_INTERNAL;
}

template <class F>
tl_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return TL_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return TL_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return TL_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return TL_ERR_INTERNAL;
  }
}

void require(bool condition, const char* what) {
  if (!condition) throw Error(Errc::invalid_argument, what);
}

BackendSpec backend_of(tl_backend b) {
  switch (b.kind) {
    case TL_BINARY64:
      return BackendSpec::binary64();
    case TL_RATIONAL:
      return BackendSpec::rational();
    case TL_DECIMAL:
      return BackendSpec::decimal(b.precision_digits);
  }
  throw Error(Errc::invalid_argument, "unknown backend kind");
}

tl_backend to_c(const BackendSpec& b) {
  switch (b.kind) {
    case BackendKind::binary64:
      return {TL_BINARY64, 0};
    case BackendKind::rational:
      return {TL_RATIONAL, 0};
    case BackendKind::decimal:
      return {TL_DECIMAL, b.precision_digits};
  }
  return {TL_BINARY64, 0};
}

Scalar parse(const char* text, const BackendSpec& backend) {
  require(text != nullptr, "null number text");
  return parse_scalar(text, backend);
}

tl_scalar* make_scalar(Scalar s) {
  std::string text = s.to_string();
  return new tl_scalar{std::move(s), std::move(text)};
}

tl_series* make_series(std::vector<Scalar> values) {
  auto* out = new tl_series{std::move(values), {}};
  out->texts.reserve(out->values.size());
  for (const auto& v : out->values) out->texts.push_back(v.to_string());
  return out;
}

EscapeCriteria criteria_of(const tl_escape_criteria* c, const EscapeCriteria& defaults) {
  if (c == nullptr) return defaults;
  return {c->flat_tol, c->jump_tol, c->min_flat};
}

void fill_escape(const std::optional<EscapeEvent>& event, int* found, tl_escape* out) {
  *found = event.has_value() ? 1 : 0;
  if (event && out != nullptr)
    *out = {event->flat_start, event->flat_end, event->escape_index, event->flat_value.to_double(),
            event->terminal_value.to_double()};
}

void fill_eigen(const EigenData& e, tl_eigen* out) {
  *out = {e.lambda_u, e.lambda_s, {e.v_u[0], e.v_u[1]}, {e.v_s[0], e.v_s[1]}, e.a_u, e.a_s};
}

tl_outcome_kind to_c(OutcomeKind k) { return static_cast<tl_outcome_kind>(static_cast<int>(k)); }

}  // namespace

extern "C" {

// ---- library --------------------------------------------------------------

const char* tl_version(void) { return "0.1.0"; }

const char* tl_last_error(void) { return last_error.c_str(); }

const char* tl_status_name(tl_status status) {
  switch (status) {
    case TL_OK:
      return "ok";
    case TL_ERR_INVALID_ARGUMENT:
      return "invalid argument";
    case TL_ERR_PARSE:
      return "parse error";
    case TL_ERR_BACKEND_MISMATCH:
      return "backend mismatch";
    case TL_ERR_OUT_OF_DOMAIN:
      return "out of domain";
    case TL_ERR_UNSUPPORTED:
      return "unsupported";
    case TL_ERR_NO_CONVERGENCE:
      return "no convergence";
    case TL_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

tl_status tl_parse_backend(const char* name, int default_digits, tl_backend* out) {
  return guarded([&] {
    require(name != nullptr && out != nullptr, "null argument");
    *out = to_c(parse_backend(name, default_digits));
  });
}

// ---- scalars --------------------------------------------------------------

tl_status tl_scalar_parse(const char* text, tl_backend backend, tl_scalar** out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    *out = make_scalar(parse(text, backend_of(backend)));
  });
}

const char* tl_scalar_text(const tl_scalar* s) { return s ? s->text.c_str() : ""; }
double tl_scalar_value(const tl_scalar* s) { return s ? s->value.to_double() : 0.0; }
void tl_scalar_free(tl_scalar* s) { delete s; }

// ---- series ---------------------------------------------------------------

size_t tl_series_size(const tl_series* s) { return s ? s->values.size() : 0; }
const char* tl_series_text(const tl_series* s, size_t i) {
  return s && i < s->texts.size() ? s->texts[i].c_str() : "";
}
double tl_series_value(const tl_series* s, size_t i) {
  return s && i < s->values.size() ? s->values[i].to_double() : 0.0;
}
void tl_series_free(tl_series* s) { delete s; }

// ---- tent map -------------------------------------------------------------

tl_status tl_tent_step(const char* h, const char* x, tl_backend backend, int k, tl_scalar** out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    const BackendSpec b = backend_of(backend);
    *out = make_scalar(tent_power_step(parse(x, b), MapParams(parse(h, b)), k));
  });
}

tl_status tl_orbit(const char* h, const char* x0, tl_backend backend, int k, size_t steps, tl_series** out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    const BackendSpec b = backend_of(backend);
    *out = make_series(orbit(parse(x0, b), MapParams(parse(h, b)), k, steps).points);
  });
}

tl_status tl_itinerary(const char* h, const char* x0, tl_backend backend, int n, char* symbols,
                       tl_scalar** slope_product) {
  return guarded([&] {
    require(symbols != nullptr, "null symbol buffer");
    const BackendSpec b = backend_of(backend);
    Itinerary it = itinerary(parse(x0, b), MapParams(parse(h, b)), n);
    std::copy(it.symbols.begin(), it.symbols.end(), symbols);
    symbols[it.symbols.size()] = '\0';
    if (slope_product != nullptr) *slope_product = make_scalar(it.slope_product);
  });
}

tl_status tl_chaotic_series(const char* h, tl_backend backend, size_t steps, tl_series** out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    *out = make_series(chaotic_series(MapParams(parse(h, backend_of(backend))), steps).points);
  });
}

// ---- cycles ---------------------------------------------------------------

tl_status tl_fixed_point(const char* h, tl_backend backend, tl_scalar** out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    *out = make_scalar(fixed_point(MapParams(parse(h, backend_of(backend)))));
  });
}

tl_status tl_two_cycle(const char* h, tl_backend backend, tl_scalar** low, tl_scalar** high) {
  return guarded([&] {
    require(low != nullptr && high != nullptr, "null output");
    auto [lo, hi] = two_cycle(MapParams(parse(h, backend_of(backend))));
    *low = make_scalar(lo);
    *high = make_scalar(hi);
  });
}

tl_status tl_enumerate_cycles(const char* h, tl_backend backend, int period, tl_cycles** out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    auto* result = new tl_cycles{period, enumerate_cycles(MapParams(parse(h, backend_of(backend))), period), {}, {}};
    for (const auto& c : result->cycles) {
      std::vector<std::string> texts;
      for (const auto& p : c.points) texts.push_back(p.to_string());
      result->point_texts.push_back(std::move(texts));
      result->multiplier_texts.push_back(c.multiplier.to_string());
    }
    *out = result;
  });
}

size_t tl_cycles_count(const tl_cycles* c) { return c ? c->cycles.size() : 0; }
int tl_cycles_period(const tl_cycles* c) { return c ? c->period : 0; }
const char* tl_cycles_point_text(const tl_cycles* c, size_t cycle, size_t point) {
  if (!c || cycle >= c->cycles.size() || point >= c->point_texts[cycle].size()) return "";
  return c->point_texts[cycle][point].c_str();
}
double tl_cycles_point_value(const tl_cycles* c, size_t cycle, size_t point) {
  if (!c || cycle >= c->cycles.size() || point >= c->cycles[cycle].points.size()) return 0.0;
  return c->cycles[cycle].points[point].to_double();
}
const char* tl_cycles_itinerary(const tl_cycles* c, size_t cycle) {
  return c && cycle < c->cycles.size() ? c->cycles[cycle].itinerary.c_str() : "";
}
const char* tl_cycles_multiplier_text(const tl_cycles* c, size_t cycle) {
  return c && cycle < c->cycles.size() ? c->multiplier_texts[cycle].c_str() : "";
}
void tl_cycles_free(tl_cycles* c) { delete c; }

tl_status tl_onset_threshold(int period, double* threshold, long* coefficients, size_t capacity, size_t* count) {
  return guarded([&] {
    require(threshold != nullptr, "null output");
    OnsetRecord rec = onset_threshold(period);
    *threshold = rec.threshold.to_double();
    if (count != nullptr) *count = rec.polynomial.size();
    if (coefficients != nullptr)
      std::copy_n(rec.polynomial.begin(), std::min(capacity, rec.polynomial.size()), coefficients);
  });
}

// ---- stabilization --------------------------------------------------------

tl_status tl_build_coefficients(const char* sigma, tl_backend backend, tl_coefficients** out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    auto* result = new tl_coefficients{build_coefficients(parse(sigma, backend_of(backend))), {}, {}};
    for (const auto& a : result->coeffs.a) result->texts.push_back(a.to_string());
    result->norm_text = result->coeffs.c.to_string();
    *out = result;
  });
}

const char* tl_coefficients_text(const tl_coefficients* c, size_t i) {
  return c && i < c->texts.size() ? c->texts[i].c_str() : "";
}
double tl_coefficients_value(const tl_coefficients* c, size_t i) {
  return c && i < c->coeffs.a.size() ? c->coeffs.a[i].to_double() : 0.0;
}
const char* tl_coefficients_norm_text(const tl_coefficients* c) { return c ? c->norm_text.c_str() : ""; }
void tl_coefficients_free(tl_coefficients* c) { delete c; }

tl_status tl_stabilize(const char* h, const char* x0, const tl_coefficients* coeffs, int k, size_t steps,
                       tl_series** out) {
  return guarded([&] {
    require(out != nullptr && coeffs != nullptr, "null argument");
    const BackendSpec b = coeffs->coeffs.c.backend();
    *out = make_series(stabilized_orbit(parse(x0, b), MapParams(parse(h, b)), k, coeffs->coeffs, steps).starred);
  });
}

tl_status tl_classify_value(const char* h, const char* value, tl_backend backend, double tolerance,
                            tl_outcome_kind* kind, double* distance) {
  return guarded([&] {
    require(kind != nullptr, "null output");
    const BackendSpec b = backend_of(backend);
    Outcome o = classify_value(parse(value, b), MapParams(parse(h, b)), tolerance);
    *kind = to_c(o.variant);
    if (distance != nullptr) *distance = o.distance;
  });
}

const char* tl_outcome_name(tl_outcome_kind kind) {
  if (kind < TL_CYCLE_LOW || kind > TL_UNRESOLVED) return "?";
  return to_string(static_cast<OutcomeKind>(kind)).data();
}

tl_status tl_companion_spectrum(const tl_coefficients* coeffs, double mu, double magnitudes[6],
                                double* spectral_radius) {
  return guarded([&] {
    require(coeffs != nullptr, "null coefficients");
    Spectrum s = companion_spectrum(mu, coeffs->coeffs);
    if (magnitudes != nullptr) std::copy(s.magnitudes.begin(), s.magnitudes.end(), magnitudes);
    if (spectral_radius != nullptr) *spectral_radius = s.spectral_radius;
  });
}

tl_status tl_classify_equilibria(const char* h, int k, const tl_coefficients* coeffs, int include_boundary,
                                 tl_equilibria** out) {
  return guarded([&] {
    require(out != nullptr && coeffs != nullptr, "null argument");
    MapParams params(parse(h, coeffs->coeffs.c.backend()));
    auto* result = new tl_equilibria{classify_equilibria(params, k, coeffs->coeffs, include_boundary != 0), {}, {}};
    for (const auto& r : result->reports) {
      result->point_texts.push_back(r.point.to_string());
      result->slope_texts.push_back(r.slope.to_string());
    }
    *out = result;
  });
}

size_t tl_equilibria_count(const tl_equilibria* e) { return e ? e->reports.size() : 0; }
const char* tl_equilibria_point_text(const tl_equilibria* e, size_t i) {
  return e && i < e->point_texts.size() ? e->point_texts[i].c_str() : "";
}
const char* tl_equilibria_slope_text(const tl_equilibria* e, size_t i) {
  return e && i < e->slope_texts.size() ? e->slope_texts[i].c_str() : "";
}
double tl_equilibria_spectral_radius(const tl_equilibria* e, size_t i) {
  return e && i < e->reports.size() ? e->reports[i].spectral_radius : 0.0;
}
int tl_equilibria_stable(const tl_equilibria* e, size_t i) {
  return e && i < e->reports.size() && e->reports[i].stable ? 1 : 0;
}
int tl_equilibria_boundary(const tl_equilibria* e, size_t i) {
  return e && i < e->reports.size() && e->reports[i].boundary ? 1 : 0;
}
void tl_equilibria_free(tl_equilibria* e) { delete e; }

// ---- experiments ----------------------------------------------------------

tl_status tl_sweep_run(const tl_sweep_config* config, tl_sweep** out) {
  return guarded([&] {
    require(config != nullptr && out != nullptr, "null argument");
    require(config->net != nullptr, "null net specification");
    const BackendSpec b = backend_of(config->backend);
    const Coefficients coeffs = build_coefficients(parse(config->sigma, b));
    SweepOptions options{config->k, config->steps, config->tolerance, config->threads};
    auto* result = new tl_sweep{sweep(parse_net(config->net), MapParams(parse(config->h, b)), coeffs, options), {}, {}};
    result->x0_texts.reserve(result->result.rows.size());
    result->final_texts.reserve(result->result.rows.size());
    for (const auto& row : result->result.rows) {
      result->x0_texts.push_back(row.x0.to_string());
      result->final_texts.push_back(row.outcome.final_value.to_string());
    }
    *out = result;
  });
}

size_t tl_sweep_size(const tl_sweep* s) { return s ? s->result.rows.size() : 0; }
const char* tl_sweep_x0_text(const tl_sweep* s, size_t i) {
  return s && i < s->x0_texts.size() ? s->x0_texts[i].c_str() : "";
}
const char* tl_sweep_final_text(const tl_sweep* s, size_t i) {
  return s && i < s->final_texts.size() ? s->final_texts[i].c_str() : "";
}
tl_outcome_kind tl_sweep_outcome(const tl_sweep* s, size_t i) {
  return s && i < s->result.rows.size() ? to_c(s->result.rows[i].outcome.variant) : TL_UNRESOLVED;
}
double tl_sweep_distance(const tl_sweep* s, size_t i) {
  return s && i < s->result.rows.size() ? s->result.rows[i].outcome.distance : 0.0;
}
size_t tl_sweep_count(const tl_sweep* s, tl_outcome_kind kind) {
  if (!s || kind < TL_CYCLE_LOW || kind > TL_UNRESOLVED) return 0;
  return s->result.count(static_cast<OutcomeKind>(kind));
}
void tl_sweep_free(tl_sweep* s) { delete s; }

tl_status tl_detect_escape(const tl_series* series, const tl_escape_criteria* criteria, int* found, tl_escape* out) {
  return guarded([&] {
    require(series != nullptr && found != nullptr, "null argument");
    fill_escape(detect_escape(series->values, criteria_of(criteria, EscapeCriteria{})), found, out);
  });
}

tl_status tl_sqrt2_experiment(const char* h_digits, int precision, size_t steps, const tl_escape_criteria* criteria,
                              tl_series** orbit_out, tl_scalar** reference, int* found, tl_escape* escape) {
  return guarded([&] {
    require(h_digits != nullptr && orbit_out != nullptr && found != nullptr, "null argument");
    Sqrt2Result r = sqrt2_experiment(h_digits, precision, steps, criteria_of(criteria, sqrt2_escape_criteria));
    fill_escape(r.escape, found, escape);
    if (reference != nullptr) *reference = make_scalar(r.reference);
    *orbit_out = make_series(std::move(r.orbit.points));
  });
}

// ---- Fibonacci recurrence -------------------------------------------------

tl_status tl_recurrence(const char* x0, const char* x1, tl_backend backend, size_t n, tl_series** out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    const BackendSpec b = backend_of(backend);
    *out = make_series(recurrence(parse(x0, b), parse(x1, b), n).seq);
  });
}

tl_status tl_eigen_basis(tl_eigen* out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    fill_eigen(eigen_basis(), out);
  });
}

tl_status tl_decompose(const char* x0, const char* x1, tl_backend backend, tl_eigen* out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    const BackendSpec b = backend_of(backend);
    fill_eigen(decompose(parse(x0, b), parse(x1, b)), out);
  });
}

tl_status tl_predict_escape(const char* x0, const char* x1, tl_backend backend, double threshold, int* found,
                            long* index) {
  return guarded([&] {
    require(found != nullptr, "null output");
    const BackendSpec b = backend_of(backend);
    auto n = predict_escape_index(parse(x0, b), parse(x1, b), threshold);
    *found = n ? 1 : 0;
    if (n && index != nullptr) *index = *n;
  });
}

tl_status tl_first_exceedance(const tl_series* series, double threshold, int* found, size_t* index) {
  return guarded([&] {
    require(series != nullptr && found != nullptr, "null argument");
    RecurrenceRun view{Scalar(), Scalar(), series->values};
    auto n = first_exceedance(view, threshold);
    *found = n ? 1 : 0;
    if (n && index != nullptr) *index = *n;
  });
}

}  // extern "C"
