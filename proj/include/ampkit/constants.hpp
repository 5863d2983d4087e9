#pragma once

// Shared numeric constants; every tolerance used by the library lives here.

namespace ampkit {

namespace tol {

// Round-trip identity checks (S<->ABCD, gamma<->z, polar<->rect).
inline constexpr double round_trip = 1e-12;

// Smallest denominator magnitude accepted before a conversion is declared
// degenerate.
inline constexpr double denom = 1e-15;

// Matching-network synthesis must reproduce its target to this residual.
inline constexpr double synth_residual = 1e-9;

// Reciprocal element models must satisfy a*d - b*c = 1 to this tolerance.
inline constexpr double reciprocity = 1e-9;

// Guard band around the K = 1 / |delta| = 1 / mu = 1 stability boundary;
// verdicts inside it are reported as conditional with a boundary flag.
inline constexpr double stability_boundary = 1e-9;

// Stub lengths this close to a tan/cot pole are rejected.
inline constexpr double stub_pole = 1e-9;

// Frequencies within this many Hz are treated as the same sample point.
inline constexpr double freq_match_hz = 1.0;

// Microstrip width synthesis terminates when |z0 - target| drops below this.
inline constexpr double microstrip_z0_ohm = 0.01;

} // namespace tol

inline constexpr double pi = 3.14159265358979323846;

// Free-space constants.
inline constexpr double c0 = 299792458.0;          // m/s
inline constexpr double eta0 = 376.730313461;      // ohm

inline constexpr double deg_per_rad = 180.0 / pi;

inline constexpr double deg2rad(double deg) { return deg / deg_per_rad; }
inline constexpr double rad2deg(double rad) { return rad * deg_per_rad; }

} // namespace ampkit
