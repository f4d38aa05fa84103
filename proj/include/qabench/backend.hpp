// Copyright 2026 The qabench Authors
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#pragma once

#include <functional>
#include <memory>
#include <string>

#include "json.hpp"
#include "qabench/annealer.hpp"
#include "qabench/models.hpp"

namespace qabench {

/// Anything that turns a physical Ising problem plus sampler parameters into
/// a SampleSet: the in-process annealer, or a solver behind the wire format.
class SamplerBackend {
  public:
    virtual ~SamplerBackend() = default;
    virtual SampleSet sample(const IsingModel& model, const SamplerParams& params) = 0;
    virtual std::string name() const = 0;
};

class LocalBackend final : public SamplerBackend {
  public:
    SampleSet sample(const IsingModel& model, const SamplerParams& params) override {
        return SimulatedAnnealer(model).sample(params);
    }
    std::string name() const override { return "local"; }
};

// Wire format, schema_version 1.
//   request:  {"schema_version", "model": <ising model json>, "params": {...}}
//   response: {"schema_version", "reads", "energies", "elapsed"}
//             or {"schema_version", "error": {"kind": "validation"|"solver", "message"}}
// "reads" is either an array of spin arrays or
//   {"encoding": "base64-bits", "num_variables": n, "data": "..."}
// where each read is packed into ceil(n/8) bytes, bit i (LSB first) set for
// spin +1, and all reads are concatenated before encoding.

enum class ReadEncoding { SpinArrays, PackedBits };

nlohmann::json sample_request_to_json(const IsingModel& model, const SamplerParams& params);
/// Throws ParseError on a malformed request.
void sample_request_from_json(const nlohmann::json& j, IsingModel& model, SamplerParams& params);

nlohmann::json sample_response_to_json(const SampleSet& set,
                                       ReadEncoding encoding = ReadEncoding::PackedBits);
/// Throws TransportError when the response does not follow the format or does
/// not fit the request, SolverError when it carries a solver error.
SampleSet sample_response_from_json(const nlohmann::json& j, int num_variables,
                                    const SamplerParams& params);

/// Server side of the wire format: never throws, failures become error
/// responses.
std::string serve_sample_request(const std::string& request, SamplerBackend& backend,
                                 ReadEncoding encoding = ReadEncoding::PackedBits);

/// Sends a serialized request and returns the serialized response. May throw
/// anything; the adapter reports it as a TransportError.
using Transport = std::function<std::string(const std::string&)>;

class RemoteBackend final : public SamplerBackend {
  public:
    explicit RemoteBackend(Transport transport, std::string name = "remote")
        : transport_(std::move(transport)), name_(std::move(name)) {}
    SampleSet sample(const IsingModel& model, const SamplerParams& params) override;
    std::string name() const override { return name_; }

  private:
    Transport transport_;
    std::string name_;
};

/// A transport that serves requests in-process with `backend`.
Transport loopback_transport(std::shared_ptr<SamplerBackend> backend,
                             ReadEncoding encoding = ReadEncoding::PackedBits);

std::string base64_encode(const std::string& bytes);
/// Throws ParseError on characters outside the alphabet or bad padding.
std::string base64_decode(const std::string& text);

}  // namespace qabench
