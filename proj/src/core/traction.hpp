#pragma once

#include "fields.hpp"
#include "quadrature.hpp"

namespace lubgap {

using Stress = Mat3;

enum class Source { Numeric, Asymptotic };

// Force and torque on the top particle.  In 2D only F[0], F[1] and T[2]
// (the scalar torque) are populated.
struct ForceTorque {
    int dim = 3;
    Source source = Source::Numeric;
    Vec3 F{}, T{};
    Vec3 errF{}, errT{};
    long evaluations = 0;

    ForceTorque& operator+=(const ForceTorque& o);
};

// sigma = 2 mu D(u) - p I built from an evaluated field.
Stress stress(const FieldEval& fe, double mu, int dim);

// Traction sigma n at a top-surface sample, with the full pressure.
Vec3 traction(const FieldModel& model, int k, const SurfacePoint& sp);

// Integral of the traction (and its moment) of sub-flow k over the top
// surface patch |x'| <= r.
ForceTorque force_numeric(const FieldModel& model, int k, const QuadSpec& spec);
ForceTorque total_numeric(const FieldModel& model, const QuadSpec& spec);

// Convenience overloads that build the model first.
ForceTorque force_numeric(int k, const ProblemParams& prm, const QuadSpec& spec);
ForceTorque total_numeric(const ProblemParams& prm, const QuadSpec& spec);

}  // namespace lubgap
