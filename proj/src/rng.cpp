#include "spikesim/rng.hpp"

#include <cmath>

namespace spikesim {

double Rng::exponential(double rate) {
  // 1 - u lies in (0, 1], so the log is finite.
  return -std::log1p(-uniform()) / rate;
}

}  // namespace spikesim
