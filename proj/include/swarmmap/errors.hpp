#pragma once

#include <stdexcept>

namespace swarmmap {

// Base class for everything the simulator can throw.
struct SimError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Map ingestion / robot placement.
struct RaggedMap : SimError { using SimError::SimError; };
struct IllegalChar : SimError { using SimError::SimError; };
struct OpenBoundary : SimError { using SimError::SimError; };
struct EmptyMap : SimError { using SimError::SimError; };
struct TooManyRobots : SimError { using SimError::SimError; };

// Sensing and occupancy updates.
struct DeadRobot : SimError { using SimError::SimError; };
struct StaleReading : SimError { using SimError::SimError; };
struct DimensionMismatch : SimError { using SimError::SimError; };

// Interaction network.
struct UnknownRobot : SimError { using SimError::SimError; };
struct NoRobotsAlive : SimError { using SimError::SimError; };

// Path planning.
struct StartOccupied : SimError { using SimError::SimError; };

// Collective rounds.
struct IdMismatch : SimError { using SimError::SimError; };

// Metrics output.
struct SinkFailure : SimError { using SimError::SimError; };

}  // namespace swarmmap
