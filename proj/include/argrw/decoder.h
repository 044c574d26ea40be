// Copyright 2026 The argrw Authors
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

#ifndef ARGRW_DECODER_H_
#define ARGRW_DECODER_H_

#include <functional>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>

#include "argrw/bit_vector.h"

namespace argrw {

// Raised by a decoder that cannot produce a correction. `tag()` is a short
// machine-readable reason used in rejection diagnostics.
class DecodeError : public std::runtime_error {
 public:
  DecodeError(std::string tag, const std::string& message)
      : std::runtime_error(message), tag_(std::move(tag)) {}
  const std::string& tag() const { return tag_; }

 private:
  std::string tag_;
};

class UnsolvableSyndromeError : public DecodeError {
 public:
  explicit UnsolvableSyndromeError(const std::string& message)
      : DecodeError("unsolvable", message) {}
};

class SyndromeTooDenseError : public DecodeError {
 public:
  explicit SyndromeTooDenseError(const std::string& message)
      : DecodeError("syndrome_too_dense", message) {}
};

// A maximum-likelihood-type decoder: given per-mechanism priors and a
// syndrome, returns a correction c with H c = s. Instances keep scratch
// state, so use one per thread.
class Decoder {
 public:
  virtual ~Decoder() = default;

  virtual BitVector decode(std::span<const double> priors,
                           const BitVector& syndrome) = 0;
  // True when identical inputs always give identical outputs.
  virtual bool deterministic() const = 0;
  virtual std::string name() const = 0;
};

using DecoderFactory = std::function<std::unique_ptr<Decoder>()>;

// Throws std::invalid_argument unless every prior lies in (0, 1) and the
// length matches `num_mechanisms`.
void validate_priors(std::span<const double> priors, size_t num_mechanisms);

}  // namespace argrw

#endif  // ARGRW_DECODER_H_
