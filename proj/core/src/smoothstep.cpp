#include "multlab/smoothstep.hpp"

#include "frame_formulas.hpp"
#include "multlab/errors.hpp"

namespace multlab {

double smoothstep(double t, int order) {
    if (order < 1) throw ParameterError("smoothstep order must be >= 1");
    return formulas::smoothstep(t, order);
}

double cutoff(double r, double inner, double outer, int order) {
    if (!(inner < outer) || inner < 0.0) throw ParameterError("cutoff needs 0 <= inner < outer");
    if (order < 1) throw ParameterError("smoothstep order must be >= 1");
    return formulas::cutoff(r, inner, outer, order);
}

} // namespace multlab
