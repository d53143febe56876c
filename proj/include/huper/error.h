// huper/error.h

// Copyright 2026  HuPER authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef HUPER_ERROR_H_
#define HUPER_ERROR_H_

#include <stdexcept>
#include <string>

namespace huper {

enum class ErrorCode {
  kParse,
  kIo,
  kInvalidArgument,
  // phoneset
  kMissingBlank,
  kDuplicateSymbol,
  kIndexGap,
  kUnknownLabel,
  kBadFeatureVector,
  kUnmappedLabel,
  // metrics
  kEmptyReference,
  kLengthMismatch,
  kDegenerateRanks,
  kEmptyCorpus,
  // emissions
  kRowSum,
  kNegativeEntry,
  kDimensionMismatch,
  kNoEvidence,
  // fst
  kSymbolTableMismatch,
  kEmptyLanguage,
  kNegativeWeight,
  kEmptyPronunciation,
  kMalformedLm,
  kOovWord,
  // drrc
  kMissingObservedLabel,
  kDegenerateFlags,
  kFoldTooSmall,
  kNonFiniteGradient,
  // cli
  kConfigError,
  kIdMismatch,
  kNoUtterances,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& msg)
      : std::runtime_error(msg), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace huper

#endif  // HUPER_ERROR_H_
