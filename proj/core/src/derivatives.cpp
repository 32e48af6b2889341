#include "gaitshift/derivatives.hpp"

#include <algorithm>
#include <cstddef>

#include "gaitshift/errors.hpp"

namespace gaitshift {
namespace {

void require_valid_timeline(const std::vector<KinematicFrame>& frames) {
  if (frames.size() < 3)
    throw InvalidInputError("derivative estimation needs at least 3 frames");
  for (std::size_t i = 1; i < frames.size(); ++i)
    if (!(frames[i].t > frames[i - 1].t))
      throw InvalidInputError("frame timestamps must be strictly increasing");
}

// Derivatives of the quadratic through (t0,y0), (t1,y1), (t2,y2), evaluated
// at te. Exact for degree <= 2 data at any spacing.
double lagrange_d1(double t0, double y0, double t1, double y1, double t2,
                   double y2, double te) {
  return y0 * (2.0 * te - t1 - t2) / ((t0 - t1) * (t0 - t2)) +
         y1 * (2.0 * te - t0 - t2) / ((t1 - t0) * (t1 - t2)) +
         y2 * (2.0 * te - t0 - t1) / ((t2 - t0) * (t2 - t1));
}

double lagrange_d2(double t0, double y0, double t1, double y1, double t2,
                   double y2) {
  return 2.0 * (y0 / ((t0 - t1) * (t0 - t2)) + y1 / ((t1 - t0) * (t1 - t2)) +
                y2 / ((t2 - t0) * (t2 - t1)));
}

// First/second derivative series of y over t via three-point stencils,
// one-sided at both ends.
void differentiate(const std::vector<double>& t, const std::vector<double>& y,
                   std::vector<double>& d1, std::vector<double>& d2) {
  const std::size_t n = t.size();
  d1.resize(n);
  d2.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t a = i == 0 ? 0 : (i == n - 1 ? n - 3 : i - 1);
    d1[i] = lagrange_d1(t[a], y[a], t[a + 1], y[a + 1], t[a + 2], y[a + 2], t[i]);
    d2[i] = lagrange_d2(t[a], y[a], t[a + 1], y[a + 1], t[a + 2], y[a + 2]);
  }
}

enum class Presence { None, All, Mixed };

Presence presence_of(const std::vector<KinematicFrame>& frames,
                     std::optional<double> KinematicFrame::* member) {
  std::size_t present = 0;
  for (const auto& f : frames)
    if ((f.*member).has_value()) ++present;
  if (present == 0) return Presence::None;
  if (present == frames.size()) return Presence::All;
  return Presence::Mixed;
}

}  // namespace

std::vector<double> moving_average(const std::vector<double>& values,
                                   std::size_t window) {
  if (window <= 1 || values.empty()) return values;
  const std::size_t half = window / 2;
  std::vector<double> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const std::size_t lo = i >= half ? i - half : 0;
    const std::size_t hi = std::min(values.size() - 1, i + half);
    double sum = 0.0;
    for (std::size_t j = lo; j <= hi; ++j) sum += values[j];
    out[i] = sum / static_cast<double>(hi - lo + 1);
  }
  return out;
}

std::vector<KinematicFrame> estimate_derivatives(std::vector<KinematicFrame> frames,
                                                 const DetectorConfig& config) {
  require_valid_timeline(frames);
  std::vector<double> t(frames.size()), theta(frames.size());
  for (std::size_t i = 0; i < frames.size(); ++i) {
    t[i] = frames[i].t;
    theta[i] = frames[i].theta_th;
  }
  theta = moving_average(theta, config.smoothing_window);
  std::vector<double> d1, d2;
  differentiate(t, theta, d1, d2);
  for (std::size_t i = 0; i < frames.size(); ++i) {
    frames[i].theta_th = theta[i];
    frames[i].theta_dot = d1[i];
    frames[i].theta_ddot = d2[i];
  }
  return frames;
}

std::vector<KinematicFrame> ensure_derivatives(std::vector<KinematicFrame> frames,
                                               const DetectorConfig& config) {
  const Presence vel = presence_of(frames, &KinematicFrame::theta_dot);
  const Presence acc = presence_of(frames, &KinematicFrame::theta_ddot);
  if (vel == Presence::Mixed || acc == Presence::Mixed)
    throw InvalidInputError("derivative signals must be fully present or fully absent");
  if (vel == Presence::All && acc == Presence::All) return frames;
  if (vel == Presence::None) return estimate_derivatives(std::move(frames), config);

  // Velocity came with the data; derive only the missing acceleration from it.
  require_valid_timeline(frames);
  std::vector<double> t(frames.size()), v(frames.size());
  for (std::size_t i = 0; i < frames.size(); ++i) {
    t[i] = frames[i].t;
    v[i] = *frames[i].theta_dot;
  }
  std::vector<double> dv, unused;
  differentiate(t, v, dv, unused);
  for (std::size_t i = 0; i < frames.size(); ++i) frames[i].theta_ddot = dv[i];
  return frames;
}

}  // namespace gaitshift
