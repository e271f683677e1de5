#ifndef FRAMEGEO_MANIFOLD_HPP
#define FRAMEGEO_MANIFOLD_HPP

#include <optional>
#include <string>
#include <vector>

#include "framegeo/contact.hpp"
#include "framegeo/frame.hpp"

namespace framegeo {

/// A manifold description as read from a spec file: a frame (or
/// structure constants) with its chart and metric, an optional
/// almost-contact block, and optional explicit evaluation points.
struct ManifoldSpec {
    std::string name;
    FrameSpec frame;
    std::optional<ContactSpec> contact;
    std::vector<std::vector<double>> points;
};

/// Parse the line-oriented spec format ('#' comments, "key: value"):
///   name: <ident>
///   coords: x y z
///   domain: z > 0                      (repeatable)
///   frame: e1 = <expr>, <expr>, <expr> (one line per frame vector)
///   metric: orthonormal  |  metric: g11 = <expr>   (i <= j)
///   structure: c i j k = <expr>        (alternative to frame:)
///   xi: <expr>, <expr>, <expr>
///   phi: a b c / d e f / g h i         (rows of [phi]^i_j)
///   points: 1 1 1; 0.5 2 3
ManifoldSpec parse_spec_text(const std::string& text, const std::string& source_name);

/// Load and validate a spec file from disk.
ManifoldSpec load_spec(const std::string& path);

/// Bundled example manifolds:
/// kenmotsu-s7, flat3, hyperbolic3, sphere3, kenmotsu-warped.
ManifoldSpec builtin(const std::string& name);
const std::vector<std::string>& builtin_names();

/// Structural equality (same expressions node for node, same chart,
/// contact data, and explicit points).
bool spec_equal(const ManifoldSpec& a, const ManifoldSpec& b);

/// Deterministic evaluation points: explicit points from the spec take
/// precedence verbatim; otherwise rejection sampling from [-3,3]^dim
/// against the chart's domain constraints. Throws SamplingExhausted
/// after 1000*count rejected candidates.
std::vector<std::vector<double>> sample_points(const ManifoldSpec& spec, int count,
                                               unsigned long long seed);

}  // namespace framegeo

#endif
