#ifndef SFCEM_UNITS_H_
#define SFCEM_UNITS_H_

// Internal unit regime: storage and traffic volumes in megabytes, rates in
// megabits per second, delays in milliseconds, costs in currency per
// megabyte. Configuration files may use GB / Gbps / ns; conversion happens
// once on load.

namespace sfcem::units {

inline constexpr double kMbPerGb = 1000.0;
inline constexpr double kMbpsPerGbps = 1000.0;
inline constexpr double kMsPerNs = 1e-6;
inline constexpr double kBitsPerByte = 8.0;
inline constexpr double kMsPerSecond = 1000.0;

// Volume (MB) carried by a flow of `rate_mbps` over one normalized
// one-second traffic slot.
constexpr double SlotVolumeMb(double rate_mbps) {
  return rate_mbps / kBitsPerByte;
}

// Milliseconds needed to push `megabytes` through a `mbps` pipe.
constexpr double TransferMs(double megabytes, double mbps) {
  return megabytes * kBitsPerByte / mbps * kMsPerSecond;
}

constexpr double PerGbToPerMb(double cost_per_gb) {
  return cost_per_gb / kMbPerGb;
}

}  // namespace sfcem::units

#endif  // SFCEM_UNITS_H_
