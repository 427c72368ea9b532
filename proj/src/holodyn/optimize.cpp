#include "holodyn/optimize.hpp"

#include <cmath>
#include <limits>
#include <memory>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

namespace holodyn {

namespace {

struct Objective {
  const std::function<double(const std::vector<double>&)>* f;
  std::vector<double> scratch;
};

double trampoline(const gsl_vector* v, void* params) {
  auto* obj = static_cast<Objective*>(params);
  for (std::size_t i = 0; i < obj->scratch.size(); ++i) obj->scratch[i] = gsl_vector_get(v, i);
  const double y = (*obj->f)(obj->scratch);
  return std::isfinite(y) ? y : std::numeric_limits<double>::max();
}

}  // namespace

MinimizeResult minimize_simplex(const std::function<double(const std::vector<double>&)>& f, std::vector<double> x0,
                                double step, int max_iterations, double size_tolerance) {
  gsl_set_error_handler_off();
  const std::size_t n = x0.size();
  MinimizeResult result{x0, f(x0), 0};
  if (n == 0) return result;

  Objective obj{&f, std::vector<double>(n)};
  gsl_multimin_function fn{&trampoline, n, &obj};
  std::unique_ptr<gsl_vector, decltype(&gsl_vector_free)> x(gsl_vector_alloc(n), &gsl_vector_free);
  std::unique_ptr<gsl_vector, decltype(&gsl_vector_free)> ss(gsl_vector_alloc(n), &gsl_vector_free);
  for (std::size_t i = 0; i < n; ++i) gsl_vector_set(x.get(), i, x0[i]);
  gsl_vector_set_all(ss.get(), step);
  std::unique_ptr<gsl_multimin_fminimizer, decltype(&gsl_multimin_fminimizer_free)> s(
      gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, n), &gsl_multimin_fminimizer_free);
  if (gsl_multimin_fminimizer_set(s.get(), &fn, x.get(), ss.get()) != GSL_SUCCESS) return result;

  int iter = 0;
  for (; iter < max_iterations; ++iter) {
    if (gsl_multimin_fminimizer_iterate(s.get()) != GSL_SUCCESS) break;
    if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(s.get()), size_tolerance) == GSL_SUCCESS) break;
  }
  const double best = s->fval;
  if (best < result.value) {
    for (std::size_t i = 0; i < n; ++i) result.x[i] = gsl_vector_get(s->x, i);
    result.value = best;
  }
  result.iterations = iter;
  return result;
}

}  // namespace holodyn
