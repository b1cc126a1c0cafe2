#include "switchkit/trajectory.hpp"

namespace switchkit {

void Trajectory::append(double t, const Vector& x, const Vector& y,
                        const Vector& u, int interval, int mode) {
  times.push_back(t);
  states.push_back(x);
  outputs.push_back(y);
  controls.push_back(u);
  output_norms.push_back(y.norm());
  intervals.push_back(interval);
  modes.push_back(mode);
}

}  // namespace switchkit
