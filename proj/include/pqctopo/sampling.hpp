#pragma once

#include <cstdint>
#include <numbers>
#include <span>

namespace pqctopo {

/// SplitMix64 output function.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Theta/Phi are the two halves of a fidelity pair; Entangle feeds the
/// entangling-capability draws.
enum class DrawStream : std::uint64_t { Theta = 0, Phi = 1, Entangle = 2 };

/// Counter-based angle source: every angle is a pure function of
/// (seed, repeat, sample, stream, parameter index), so any partition of the
/// sample range across workers reproduces the same values.
class ParameterStream {
 public:
  explicit ParameterStream(std::uint64_t seed, std::uint64_t repeat = 0)
      : key_(mix64(mix64(seed) ^ (repeat * 0xd1b54a32d192ed03ULL))) {}

  /// Uniform double in [0, 1).
  double uniform(std::uint64_t sample, DrawStream stream,
                 std::uint64_t index) const {
    std::uint64_t h = mix64(key_ ^ sample);
    h = mix64(h ^ (static_cast<std::uint64_t>(stream) + 0x632be59bd9b4e019ULL));
    h = mix64(h ^ index);
    return static_cast<double>(h >> 11) * 0x1.0p-53;
  }

  /// Fills `out` with angles uniform on [0, 2pi).
  void angles(std::uint64_t sample, DrawStream stream,
              std::span<double> out) const {
    for (std::size_t i = 0; i < out.size(); ++i) {
      out[i] = 2.0 * std::numbers::pi * uniform(sample, stream, i);
    }
  }

 private:
  std::uint64_t key_;
};

}  // namespace pqctopo
