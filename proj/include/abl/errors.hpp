#pragma once

#include <stdexcept>
#include <string>

namespace abl {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : Error { using Error::Error; };
struct LoopError : Error { using Error::Error; };
struct DimensionError : Error { using Error::Error; };
struct EmptySideError : Error { using Error::Error; };
struct SizeError : Error { using Error::Error; };
struct TooSmallError : Error { using Error::Error; };
struct TooSparseError : Error { using Error::Error; };
struct ConstructionFailed : Error { using Error::Error; };
struct ChainViolation : Error { using Error::Error; };
struct NotEnoughVertices : Error { using Error::Error; };
struct UnbalancedError : Error { using Error::Error; };
struct StabilityViolation : Error { using Error::Error; };
struct MatchEdgeInvalid : Error { using Error::Error; };

// Run-time halts of the embedding stage. These carry enough context to
// surface the violating class/vertex in reports.
struct InitFailure : Error {
    InitFailure(std::string what, int cls, int vertex)
        : Error(std::move(what)), cls_index(cls), vertex(vertex) {}
    int cls_index;
    int vertex;
};

struct QueueOverflow : Error {
    QueueOverflow(std::string what, int cls, long t)
        : Error(std::move(what)), cls_index(cls), time(t) {}
    int cls_index;
    long time;
};

struct EmptyPool : Error {
    EmptyPool(std::string what, int h_vertex, long t)
        : Error(std::move(what)), h_vertex(h_vertex), time(t) {}
    int h_vertex;
    long time;
};

} // namespace abl
