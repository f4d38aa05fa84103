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

#include "qabench/backend.hpp"

#include <array>
#include <stdexcept>

#include "qabench/error.hpp"

namespace qabench {

namespace {

constexpr int kWireVersion = 1;
constexpr char kAlphabet[] = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

nlohmann::json error_response(const std::string& kind, const std::string& message) {
    return {{"schema_version", kWireVersion}, {"error", {{"kind", kind}, {"message", message}}}};
}

std::vector<Value> decode_spin_arrays(const nlohmann::json& reads, int n) {
    std::vector<Value> spins;
    spins.reserve(reads.size() * static_cast<std::size_t>(n));
    for (const auto& read : reads) {
        if (!read.is_array() || static_cast<int>(read.size()) != n)
            throw TransportError("response read has wrong length");
        for (const auto& v : read) {
            if (!v.is_number_integer()) throw TransportError("response spin is not an integer");
            const auto s = v.get<int>();
            if (s != 1 && s != -1) throw TransportError("response spin is not +1/-1");
            spins.push_back(static_cast<Value>(s));
        }
    }
    return spins;
}

std::vector<Value> decode_packed(const nlohmann::json& reads, int n, std::size_t num_reads) {
    if (reads.value("encoding", "") != "base64-bits")
        throw TransportError("unknown read encoding");
    if (reads.at("num_variables").get<int>() != n)
        throw TransportError("response num_variables does not match the request");
    std::string bytes;
    try {
        bytes = base64_decode(reads.at("data").get<std::string>());
    } catch (const ParseError& e) {
        throw TransportError(std::string("response reads: ") + e.what());
    }
    const std::size_t stride = (static_cast<std::size_t>(n) + 7) / 8;
    if (bytes.size() != stride * num_reads) throw TransportError("packed reads have wrong size");
    std::vector<Value> spins(num_reads * static_cast<std::size_t>(n));
    for (std::size_t r = 0; r < num_reads; ++r)
        for (int i = 0; i < n; ++i) {
            const auto byte = static_cast<unsigned char>(bytes[r * stride + i / 8]);
            spins[r * n + i] = (byte >> (i % 8)) & 1 ? 1 : -1;
        }
    return spins;
}

}  // namespace

std::string base64_encode(const std::string& bytes) {
    std::string out;
    out.reserve((bytes.size() + 2) / 3 * 4);
    std::size_t i = 0;
    for (; i + 2 < bytes.size(); i += 3) {
        const unsigned v = static_cast<unsigned char>(bytes[i]) << 16 |
                           static_cast<unsigned char>(bytes[i + 1]) << 8 |
                           static_cast<unsigned char>(bytes[i + 2]);
        for (int k = 3; k >= 0; --k) out += kAlphabet[(v >> (6 * k)) & 63];
    }
    if (const auto rest = bytes.size() - i; rest > 0) {
        unsigned v = static_cast<unsigned char>(bytes[i]) << 16;
        if (rest == 2) v |= static_cast<unsigned char>(bytes[i + 1]) << 8;
        out += kAlphabet[(v >> 18) & 63];
        out += kAlphabet[(v >> 12) & 63];
        out += rest == 2 ? kAlphabet[(v >> 6) & 63] : '=';
        out += '=';
    }
    return out;
}

std::string base64_decode(const std::string& text) {
    std::array<int, 256> index{};
    index.fill(-1);
    for (int k = 0; k < 64; ++k) index[static_cast<unsigned char>(kAlphabet[k])] = k;
    if (text.size() % 4 != 0) throw ParseError("base64 length is not a multiple of 4");
    std::string out;
    out.reserve(text.size() / 4 * 3);
    for (std::size_t i = 0; i < text.size(); i += 4) {
        const bool last = i + 4 == text.size();
        int pad = 0;
        unsigned v = 0;
        for (std::size_t k = 0; k < 4; ++k) {
            const char c = text[i + k];
            if (c == '=' && last && k >= 2) {
                ++pad;
                v <<= 6;
                continue;
            }
            const int d = index[static_cast<unsigned char>(c)];
            if (d < 0 || pad > 0) throw ParseError("invalid base64 data");
            v = v << 6 | static_cast<unsigned>(d);
        }
        out += static_cast<char>(v >> 16);
        if (pad < 2) out += static_cast<char>((v >> 8) & 0xff);
        if (pad < 1) out += static_cast<char>(v & 0xff);
    }
    return out;
}

nlohmann::json sample_request_to_json(const IsingModel& model, const SamplerParams& params) {
    return {{"schema_version", kWireVersion},
            {"model", model_to_json(model)},
            {"params",
             {{"num_reads", params.num_reads},
              {"num_sweeps", params.num_sweeps},
              {"beta_hot", params.beta_hot},
              {"beta_cold", params.beta_cold},
              {"seed", params.seed},
              {"num_threads", params.num_threads}}}};
}

void sample_request_from_json(const nlohmann::json& j, IsingModel& model, SamplerParams& params) {
    try {
        if (j.at("schema_version").get<int>() != kWireVersion)
            throw ParseError("unsupported request schema_version");
        model = model_from_json<Vartype::Spin>(j.at("model"));
        const auto& p = j.at("params");
        SamplerParams out;
        out.num_reads = p.at("num_reads").get<int>();
        out.num_sweeps = p.at("num_sweeps").get<int>();
        out.beta_hot = p.at("beta_hot").get<double>();
        out.beta_cold = p.at("beta_cold").get<double>();
        out.seed = p.at("seed").get<std::uint64_t>();
        out.num_threads = p.value("num_threads", 1);
        out.validate();
        params = out;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("request: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("request: ") + e.what());
    }
}

nlohmann::json sample_response_to_json(const SampleSet& set, ReadEncoding encoding) {
    nlohmann::json reads;
    const int n = set.num_variables;
    if (encoding == ReadEncoding::SpinArrays) {
        reads = nlohmann::json::array();
        for (int r = 0; r < set.num_reads(); ++r) {
            const auto read = set.read(r);
            reads.push_back(std::vector<int>(read.begin(), read.end()));
        }
    } else {
        const std::size_t stride = (static_cast<std::size_t>(n) + 7) / 8;
        std::string bytes(stride * set.num_reads(), '\0');
        for (int r = 0; r < set.num_reads(); ++r) {
            const auto read = set.read(r);
            for (int i = 0; i < n; ++i)
                if (read[i] > 0) bytes[r * stride + i / 8] |= static_cast<char>(1 << (i % 8));
        }
        reads = {{"encoding", "base64-bits"}, {"num_variables", n}, {"data", base64_encode(bytes)}};
    }
    return {{"schema_version", kWireVersion},
            {"reads", std::move(reads)},
            {"energies", set.energies},
            {"elapsed", set.elapsed_seconds}};
}

SampleSet sample_response_from_json(const nlohmann::json& j, int num_variables,
                                    const SamplerParams& params) {
    try {
        if (!j.is_object()) throw TransportError("response is not a JSON object");
        if (j.at("schema_version").get<int>() != kWireVersion)
            throw TransportError("unsupported response schema_version");
        if (j.contains("error")) {
            const auto& e = j.at("error");
            const auto kind = e.at("kind").get<std::string>();
            const auto message = e.at("message").get<std::string>();
            if (kind == "solver") throw SolverError("remote solver: " + message);
            throw TransportError("remote rejected the request (" + kind + "): " + message);
        }
        SampleSet set;
        set.num_variables = num_variables;
        set.params = params;
        set.energies = j.at("energies").get<std::vector<double>>();
        if (static_cast<int>(set.energies.size()) != params.num_reads)
            throw TransportError("response has " + std::to_string(set.energies.size()) +
                                 " energies for " + std::to_string(params.num_reads) + " reads");
        const auto& reads = j.at("reads");
        set.spins = reads.is_array() ? decode_spin_arrays(reads, num_variables)
                                     : decode_packed(reads, num_variables, set.energies.size());
        if (set.spins.size() != set.energies.size() * static_cast<std::size_t>(num_variables))
            throw TransportError("response read count does not match its energies");
        set.elapsed_seconds = j.at("elapsed").get<double>();
        if (!(set.elapsed_seconds >= 0.0)) throw TransportError("response elapsed is negative");
        return set;
    } catch (const nlohmann::json::exception& e) {
        throw TransportError(std::string("malformed response: ") + e.what());
    }
}

std::string serve_sample_request(const std::string& request, SamplerBackend& backend,
                                 ReadEncoding encoding) {
    IsingModel model(0);
    SamplerParams params;
    try {
        sample_request_from_json(nlohmann::json::parse(request), model, params);
    } catch (const std::exception& e) {
        return error_response("validation", e.what()).dump();
    }
    try {
        return sample_response_to_json(backend.sample(model, params), encoding).dump();
    } catch (const std::exception& e) {
        return error_response("solver", e.what()).dump();
    }
}

SampleSet RemoteBackend::sample(const IsingModel& model, const SamplerParams& params) {
    params.validate();
    const std::string request = sample_request_to_json(model, params).dump();
    std::string response;
    try {
        response = transport_(request);
    } catch (const std::exception& e) {
        throw TransportError(std::string("transport failed: ") + e.what());
    }
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(response);
    } catch (const nlohmann::json::exception& e) {
        throw TransportError(std::string("response is not JSON: ") + e.what());
    }
    return sample_response_from_json(j, model.num_variables(), params);
}

Transport loopback_transport(std::shared_ptr<SamplerBackend> backend, ReadEncoding encoding) {
    return [backend = std::move(backend), encoding](const std::string& request) {
        return serve_sample_request(request, *backend, encoding);
    };
}

}  // namespace qabench
