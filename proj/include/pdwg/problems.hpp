#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pdwg/assembly.hpp"
#include "pdwg/mesh.hpp"

namespace pdwg {

/// Closed-form exact solution with its gradient and Laplacian (= f).
struct ManufacturedSolution {
  std::string name;
  std::function<double(Point)> u;
  std::function<Point(Point)> gradient;
  std::function<double(Point)> laplacian;

  double operator()(Point p) const { return u(p); }
  double normal_derivative(Point p, Point n) const { return dot(gradient(p), n); }
};

/// quad, sinsin, coscos, bubble.
const std::vector<ManufacturedSolution>& catalog();
const ManufacturedSolution& find_solution(std::string_view name);

struct CaseConfig {
  std::string name;
  std::vector<BoundarySegmentSpec> segments;
};

/// case1..case5 and figures.
const std::vector<CaseConfig>& case_configs();
const CaseConfig& find_case(std::string_view name);

inline constexpr std::uint64_t kDefaultSeed = 20240229;

struct NoiseSpec {
  double amplitude = 0.0;
  std::uint64_t seed = kDefaultSeed;
};

/// Uniform draws in the open interval (0, 1) from std::mt19937_64: the top 53
/// bits of each output, offset by one half ulp. Both the engine and this
/// mapping are fixed, so sequences are identical on every platform.
class UniformSource {
public:
  explicit UniformSource(std::uint64_t seed) : engine_(seed) {}
  double next() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53; }

private:
  std::mt19937_64 engine_;
};

/// values[i] += a (0.5 - r_i), one draw per value in order. a = 0 leaves the
/// values untouched.
void perturb(std::span<double> values, const NoiseSpec& spec);

/// Boundary data of an exact solution on the tagged edges.
BoundarySamples sample_exact_boundary_data(const ManufacturedSolution& solution, const Mesh& mesh,
                                           std::span<const EdgeTag> tags, const LineQuadrature& rule);

}  // namespace pdwg
