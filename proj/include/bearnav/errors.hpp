#pragma once

#include <stdexcept>
#include <string>

namespace bearnav {

// Inputs too close/coincident for the requested construction.
struct DegenerateInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Near-parallel lines or collinear configurations.
struct DegenerateGeometry : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EmptyPolytope : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Unbounded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Query point lies in no cell of the decomposition.
struct NotCovered : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SynthesisInfeasible : std::runtime_error {
    SynthesisInfeasible(int i, int j, const std::string& what)
        : std::runtime_error(what), edge_i(i), edge_j(j) {}
    int edge_i;
    int edge_j;
};

struct LandmarkInsideCell : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Fewer than two landmarks in view; the bearing controller cannot run.
struct TooFewVisible : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MissingLandmark : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input files / flags.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace bearnav
