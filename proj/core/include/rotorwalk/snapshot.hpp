#pragma once

#include <filesystem>
#include <iosfwd>

#include "rotorwalk/odometer.hpp"
#include "rotorwalk/rotor_state.hpp"

namespace rotorwalk {

/// Rotor snapshot, little-endian:
///   "RTW1"  u8 version(=1)  u8 dim
///   u16 len + rule spec     u16 len + mechanism spec
///   u64 count, then count records sorted by point:
///     dim x i64 coords, u8 direction index of the current rotor, u8 progress
///   u64 ray count, then per escape ray: (dim-1) x i64 column, i64 start
/// Explicit rules have no textual spec and cannot be saved.
void write_snapshot(std::ostream& out, const RotorState& state);
RotorState read_snapshot(std::istream& in);
void save_snapshot(const std::filesystem::path& file, const RotorState& state);
RotorState load_snapshot(const std::filesystem::path& file);

/// Odometer dump, little-endian:
///   "RTO1"  u8 version(=1)  u8 dim  i64 radius  u64 particles
///   u64 count, then count records sorted by point: dim x i64 coords, u64 exits
void write_odometer(std::ostream& out, const Odometer& u);
Odometer read_odometer(std::istream& in);

}  // namespace rotorwalk
