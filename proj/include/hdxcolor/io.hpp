// Copyright 2026 The Authors.
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

#ifndef HDXCOLOR_IO_HPP_
#define HDXCOLOR_IO_HPP_

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "hdxcolor/certificates.hpp"
#include "hdxcolor/graphs.hpp"
#include "hdxcolor/sampler.hpp"
#include "hdxcolor/spectral.hpp"
#include "hdxcolor/trickledown.hpp"

namespace hdxcolor {

using Json = nlohmann::json;

// "n m" followed by m lines "u v" with 0-based vertex ids.
Graph parse_graph(std::istream& in);
Graph read_graph_file(const std::string& path);

// A JSON object mapping element ids to color arrays; "all": q sets every
// list not given explicitly to [1..q].
std::vector<std::vector<int>> parse_lists(const Json& doc, int element_count);
// `lists` is "all:q" or a path to a lists file.
ListColoringInstance load_instance(const std::string& graph_path, const std::string& lists,
                                   ElementKind kind);

// Non-finite values become the strings "inf", "-inf" and "nan".
Json number_to_json(double x);
double number_from_json(const Json& j);

// 17 significant digits.
std::string format_double(double x);

Json to_json(const FaceVerdict& v);
FaceVerdict face_verdict_from_json(const Json& j);
Json to_json(const CertificateReport& r);
CertificateReport certificate_report_from_json(const Json& j);
Json to_json(const SpectralProfile& p);
SpectralProfile spectral_profile_from_json(const Json& j);
Json to_json(const SpectrumReport& r);
SpectrumReport spectrum_report_from_json(const Json& j);
Json to_json(const MixingReport& r);
MixingReport mixing_report_from_json(const Json& j);
Json to_json(const ChainResult& r);
ChainResult chain_result_from_json(const Json& j);
Json to_json(const ConditionVerdict& v);
ConditionVerdict condition_verdict_from_json(const Json& j);
Json to_json(const BoundCheck& c);
BoundCheck bound_check_from_json(const Json& j);
Json to_json(const PairingRecord& r);
PairingRecord pairing_record_from_json(const Json& j);

// Per-face matrices keyed by canonical face string, with the ground keys of
// the rows and a dense row-major value array.
Json family_to_json(const WeightedComplex& X, const FaceMatrices& family);
FaceMatrices family_from_json(const WeightedComplex& X, const Json& j);

// The certify document: parameters, report, checks and pairing.
Json certify_document(const ListColoringInstance& inst, const WeightedComplex& X,
                      const RegimeRun& run, bool include_families);

std::string gamma_csv(const SpectralProfile& p);
std::string tv_csv(const MixingReport& r);
std::string faces_csv(const CertificateReport& r);

enum class DocumentKind { kSample, kSpectrum, kCertify, kMix };
const Json& schema(DocumentKind kind);
// Validates against the subset of JSON Schema used by schema(): type,
// required, properties, additionalProperties (schema form), items, enum and
// minimum. Returns one message per violation.
std::vector<std::string> validate(const Json& doc, const Json& schema);

}  // namespace hdxcolor

#endif  // HDXCOLOR_IO_HPP_
