#pragma once

// Closed loops in curve space used to probe the conservativity criteria.
//
//   circle-scale  circle of radius 1 + 0.3 sin(2 pi t)
//   shape-scale   fixed ellipse shape with perimeter 1 + 0.3 sin(2 pi t)
//   mixed-sv      circle -> Fig. 1 triangle at perimeter 1, scale to 2,
//                 triangle -> circle at perimeter 2, scale back to 1
//   mixed-mm      the same four legs through the Fig. 2 triangle
//
// Legs use the ease profile (1 - cos(pi tau)) / 2, so the path velocity
// vanishes at keyframes.

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>

#include "curveflow/criteria.hpp"

namespace curveflow {

enum class LoopRecipe { CircleScale, ShapeScale, MixedSv, MixedMm };

std::string_view to_string(LoopRecipe r);
// Throws InvalidInput on unknown names.
LoopRecipe parse_loop_recipe(std::string_view name);

struct LoopOptions {
  std::size_t m = 400;   // time samples per loop
  std::size_t n = 0;     // nodes per curve; 0 picks a recipe default
  double eps    = 0.05;  // corner scale of the triangle shapes
  unsigned jobs = 1;
};

// Frames at t_k = k/m, k = 0..m, each resampled to constant speed when
// needed and cyclically shifted to minimize node displacement from its
// predecessor.
CurvePath build_path(const std::function<ClosedCurve(double)>& frame_at, std::size_t m);

// The keyframe shape of a mixed recipe, scaled to perimeter 1.
ClosedCurve loop_keyframe_shape(LoopRecipe recipe, const LoopOptions& options);

// Frames of a recipe keep node 0 pinned, so no cyclic alignment is applied.
CurvePath make_loop(LoopRecipe recipe, const LoopOptions& options);

struct LoopReport {
  LoopRecipe recipe = LoopRecipe::CircleScale;
  bool cubic        = false;  // true for the curvature-cubed pairing
  LoopIntegral integral;
};

// Builds the loop and evaluates loop_integral_mm for mixed-mm and
// loop_integral_sv otherwise.
LoopReport run_loop(LoopRecipe recipe, const LoopOptions& options);

}  // namespace curveflow
