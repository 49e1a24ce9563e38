#pragma once

#include <stdexcept>
#include <string>

namespace hybrid {

struct ZeroLeadingCoefficient : std::domain_error {
    using std::domain_error::domain_error;
};
struct PoleAtL : std::domain_error {
    using std::domain_error::domain_error;
};
struct DegreeTooLarge : std::domain_error {
    using std::domain_error::domain_error;
};
struct NotSelfAdjoint : std::domain_error {
    using std::domain_error::domain_error;
};
struct Reducible : std::domain_error {
    using std::domain_error::domain_error;
};
struct DegenerateX : std::logic_error {
    using std::logic_error::logic_error;
};
struct MalformedSeries : std::domain_error {
    using std::domain_error::domain_error;
};
struct RepeatedRoots : std::domain_error {
    using std::domain_error::domain_error;
};
struct ResidualTooLarge : std::domain_error {
    using std::domain_error::domain_error;
};
struct IllConditioned : std::domain_error {
    using std::domain_error::domain_error;
};
struct NegativeSquare : std::domain_error {
    using std::domain_error::domain_error;
};
struct CutoffTooSmall : std::domain_error {
    using std::domain_error::domain_error;
};
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
/// I/O or syntax failure while reading a config or result file; distinct from
/// domain validation failures so the CLI can map them to different exit codes.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace hybrid
