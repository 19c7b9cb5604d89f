#include "pdwg/problems.hpp"

#include <cmath>
#include <stdexcept>

namespace pdwg {

const std::vector<ManufacturedSolution>& catalog() {
  static const std::vector<ManufacturedSolution> solutions = {
      {"quad",
       [](Point p) { return p.x * p.x + p.y * p.y - 10.0 * p.x * p.y; },
       [](Point p) { return Point{2.0 * p.x - 10.0 * p.y, 2.0 * p.y - 10.0 * p.x}; },
       [](Point) { return 4.0; }},
      {"sinsin",
       [](Point p) { return std::sin(p.x) * std::sin(p.y); },
       [](Point p) { return Point{std::cos(p.x) * std::sin(p.y), std::sin(p.x) * std::cos(p.y)}; },
       [](Point p) { return -2.0 * std::sin(p.x) * std::sin(p.y); }},
      {"coscos",
       [](Point p) { return std::cos(p.x) * std::cos(p.y); },
       [](Point p) { return Point{-std::sin(p.x) * std::cos(p.y), -std::cos(p.x) * std::sin(p.y)}; },
       [](Point p) { return -2.0 * std::cos(p.x) * std::cos(p.y); }},
      {"bubble",
       [](Point p) { return 30.0 * p.x * p.y * (1.0 - p.x) * (1.0 - p.y); },
       [](Point p) {
         return Point{30.0 * (1.0 - 2.0 * p.x) * p.y * (1.0 - p.y), 30.0 * p.x * (1.0 - p.x) * (1.0 - 2.0 * p.y)};
       },
       [](Point p) { return 60.0 * (p.y * p.y - p.y) + 60.0 * (p.x * p.x - p.x); }},
  };
  return solutions;
}

const ManufacturedSolution& find_solution(std::string_view name) {
  for (const auto& s : catalog()) {
    if (s.name == name) return s;
  }
  throw std::invalid_argument("unknown problem: " + std::string(name));
}

const std::vector<CaseConfig>& case_configs() {
  using S = Side;
  static const std::vector<CaseConfig> cases = {
      {"case1",
       {{S::bottom, 0.0, 1.0, true, true},
        {S::right, 0.0, 1.0, true, true},
        {S::left, 0.0, 1.0, true, false},
        {S::top, 0.0, 1.0, false, true}}},
      {"case2",
       {{S::bottom, 0.0, 1.0, true, false},
        {S::left, 0.0, 1.0, true, false},
        {S::right, 0.0, 1.0, false, true},
        {S::top, 0.0, 1.0, false, true}}},
      {"case3",
       {{S::bottom, 0.0, 1.0, true, true}, {S::left, 0.0, 1.0, true, false}, {S::top, 0.0, 1.0, false, true}}},
      {"case4", {{S::left, 0.0, 1.0, true, true}, {S::right, 0.0, 1.0, true, true}}},
      {"case5", {{S::bottom, 0.0, 1.0, true, true}}},
      {"figures", {{S::bottom, 0.0, 0.5, true, true}}},
  };
  return cases;
}

const CaseConfig& find_case(std::string_view name) {
  for (const auto& c : case_configs()) {
    if (c.name == name) return c;
  }
  throw std::invalid_argument("unknown case: " + std::string(name));
}

void perturb(std::span<double> values, const NoiseSpec& spec) {
  if (spec.amplitude < 0.0) {
    throw std::invalid_argument("perturb: amplitude must be non-negative");
  }
  if (spec.amplitude == 0.0) {
    return;
  }
  UniformSource rng(spec.seed);
  for (double& v : values) {
    v += spec.amplitude * (0.5 - rng.next());
  }
}

BoundarySamples sample_exact_boundary_data(const ManufacturedSolution& solution, const Mesh& mesh,
                                           std::span<const EdgeTag> tags, const LineQuadrature& rule) {
  return sample_boundary_data(
      mesh, tags, solution.u, [&](Point p, Point n) { return solution.normal_derivative(p, n); }, rule);
}

}  // namespace pdwg
