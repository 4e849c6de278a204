// Copyright 2026 The Vantage Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace vantage
{

enum class ErrorCode
{
  MalformedHeader,
  DimensionMismatch,
  InvalidCellSymbol,
  GenerationFailed,
  OutOfBounds,
  StartOccupied,
  GoalOccupied,
  OriginOccupied,
  NoInspectionPoint,
  Unreachable,
  InvalidStartPose,
  SamplingExhausted,
  InvalidEpisode,
  MissingHistory,
  SteppingTerminatedEpisode,
  EmptyRecordSet,
  UnknownPolicy,
  UnknownMode,
  IoError,
  InvalidArgument,
};

constexpr std::string_view to_string(ErrorCode code)
{
  switch (code) {
    case ErrorCode::MalformedHeader: return "MalformedHeader";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidCellSymbol: return "InvalidCellSymbol";
    case ErrorCode::GenerationFailed: return "GenerationFailed";
    case ErrorCode::OutOfBounds: return "OutOfBounds";
    case ErrorCode::StartOccupied: return "StartOccupied";
    case ErrorCode::GoalOccupied: return "GoalOccupied";
    case ErrorCode::OriginOccupied: return "OriginOccupied";
    case ErrorCode::NoInspectionPoint: return "NoInspectionPoint";
    case ErrorCode::Unreachable: return "Unreachable";
    case ErrorCode::InvalidStartPose: return "InvalidStartPose";
    case ErrorCode::SamplingExhausted: return "SamplingExhausted";
    case ErrorCode::InvalidEpisode: return "InvalidEpisode";
    case ErrorCode::MissingHistory: return "MissingHistory";
    case ErrorCode::SteppingTerminatedEpisode: return "SteppingTerminatedEpisode";
    case ErrorCode::EmptyRecordSet: return "EmptyRecordSet";
    case ErrorCode::UnknownPolicy: return "UnknownPolicy";
    case ErrorCode::UnknownMode: return "UnknownMode";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error
{
public:
  Error(ErrorCode code, const std::string & what)
  : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept {return code_;}

private:
  ErrorCode code_;
};

}  // namespace vantage
