#include "store/persistence.hpp"

#include <atomic>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "store/error.hpp"
#include "store/hash.hpp"

namespace store::persistence {

namespace {

using nlohmann::json;

[[noreturn]] void parse_error(const std::string& what) {
  throw Error(ErrorCode::ParseError, "malformed project file: " + what, {{"reason", what}});
}

template <typename E, typename Parser>
E parse_enum_field(const json& j, const char* key, Parser parser) {
  const auto text = j.at(key).get<std::string>();
  auto v = parser(text);
  if (!v) parse_error(std::string("bad value '") + text + "' for " + key);
  return *v;
}

json strides_json(const StrideSet& s) {
  auto arr = json::array();
  for (Stride x : s) arr.push_back(std::string(1, stride_letter(x)));
  return arr;
}

StrideSet strides_from(const json& arr) {
  StrideSet out;
  for (const auto& v : arr) {
    const auto s = v.get<std::string>();
    auto tag = s.size() == 1 ? parse_stride(s) : std::nullopt;
    if (!tag) parse_error("bad STRIDE tag '" + s + "'");
    out.insert(*tag);
  }
  return out;
}

void put_optional(json& j, const char* key, const std::optional<std::string>& v) {
  if (v) j[key] = *v;
}

std::optional<std::string> get_optional(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  return it->get<std::string>();
}

json assessment_json(const RiskAssessment& r) {
  json j = {{"threat_id", r.threat_id},
            {"method", std::string(to_string(r.method()))},
            {"score_tenths", r.score_tenths},
            {"band", std::string(to_string(r.band))},
            {"excluded", r.excluded}};
  if (const auto* s = std::get_if<SimpleRiskInputs>(&r.inputs)) {
    j["probability"] = s->probability;
    j["damage_potential"] = s->damage_potential;
  } else {
    const auto& d = std::get<DreadComponents>(r.inputs);
    j["dread_components"] = {{"damage", d.damage},
                             {"reproducibility", d.reproducibility},
                             {"exploitability", d.exploitability},
                             {"affected_users", d.affected_users},
                             {"discoverability", d.discoverability}};
  }
  put_optional(j, "exclusion_rationale", r.exclusion_rationale);
  return j;
}

RiskAssessment assessment_from(const json& j) {
  RiskAssessment r;
  r.threat_id = j.at("threat_id").get<std::string>();
  const auto method = parse_enum_field<RiskMethod>(j, "method", parse_risk_method);
  if (method == RiskMethod::SimpleRisk) {
    if (j.contains("dread_components")) parse_error("SimpleRisk assessment carries DREAD components");
    r.inputs = SimpleRiskInputs{j.at("probability").get<int>(), j.at("damage_potential").get<int>()};
  } else {
    if (j.contains("probability") || j.contains("damage_potential"))
      parse_error("Dread assessment carries SimpleRisk inputs");
    const auto& d = j.at("dread_components");
    r.inputs = DreadComponents{d.at("damage").get<int>(), d.at("reproducibility").get<int>(),
                               d.at("exploitability").get<int>(), d.at("affected_users").get<int>(),
                               d.at("discoverability").get<int>()};
  }
  r.score_tenths = j.at("score_tenths").get<int>();
  r.band = parse_enum_field<RiskBand>(j, "band", parse_risk_band);
  r.excluded = j.at("excluded").get<bool>();
  r.exclusion_rationale = get_optional(j, "exclusion_rationale");
  return r;
}

std::atomic<unsigned> temp_counter{0};

}  // namespace

json encode(const Goal& g) {
  return {{"id", g.id}, {"description", g.description}, {"source", std::string(to_string(g.source))}};
}

json encode(const Stakeholder& s) {
  return {{"id", s.id}, {"name", s.name}, {"group", std::string(to_string(s.group))},
          {"priority", std::string(to_string(s.priority))}};
}

json encode(const Agreement& a) {
  json x = {{"goal_id", a.goal_id}, {"stakeholder_id", a.stakeholder_id},
            {"verdict", std::string(to_string(a.verdict))}};
  put_optional(x, "note", a.note);
  return x;
}

json encode(const Asset& a) {
  auto cia = json::array();
  for (CiaFacet f : a.cia) cia.push_back(std::string(1, cia_letter(f)));
  return {{"id", a.id}, {"name", a.name}, {"description", a.description}, {"cia", cia},
          {"priority", std::string(to_string(a.priority))}, {"identified_by", a.identified_by}};
}

json encode(const AttackPoint& pt) {
  return {{"id", pt.id}, {"kind", std::string(to_string(pt.kind))}, {"name", pt.name},
          {"description", pt.description}};
}

json encode(const Threat& t) {
  return {{"id", t.id}, {"title", t.title}, {"description", t.description},
          {"stride", strides_json(t.stride)}, {"asset_refs", t.asset_refs},
          {"point_refs", t.point_refs}, {"mitigated", t.mitigated}};
}

json encode(const RiskAssessment& r) { return assessment_json(r); }

json encode(const SecurityRequirement& r) {
  json origin = r.catalog_entry_id ? json{{"kind", "Catalog"}, {"entry_id", *r.catalog_entry_id}}
                                   : json{{"kind", "Manual"}};
  return {{"id", r.id}, {"text", r.text}, {"threat_refs", r.threat_refs}, {"origin", origin}};
}

json encode(const ValidationRecord& v) {
  json x = {{"requirement_id", v.requirement_id}, {"reviewer", v.reviewer},
            {"verdict", std::string(to_string(v.verdict))}};
  put_optional(x, "rationale", v.rationale);
  return x;
}

json encode(const Entity& e) {
  return std::visit([](const auto& x) { return encode(x); }, e);
}

namespace {

template <typename T>
json encode_all(const std::vector<T>& items) {
  auto arr = json::array();
  for (const auto& x : items) arr.push_back(encode(x));
  return arr;
}

}  // namespace

json project_to_json(const Project& p) {
  json j;
  j["project_id"] = p.project_id;
  j["name"] = p.name;
  j["default_method"] = std::string(to_string(p.default_method));
  j["goals"] = encode_all(p.goals);
  j["stakeholders"] = encode_all(p.stakeholders);
  j["agreements"] = encode_all(p.agreements);
  j["assets"] = encode_all(p.assets);
  j["attack_points"] = encode_all(p.attack_points);
  j["none_declared"] = json::array();
  for (PointKind k : p.none_declared) j["none_declared"].push_back(std::string(to_string(k)));
  j["threats"] = encode_all(p.threats);
  j["assessments"] = encode_all(p.assessments);
  j["requirements"] = encode_all(p.requirements);
  j["validations"] = encode_all(p.validations);
  if (p.srs_record) {
    j["srs_record"] = {{"generated_at", p.srs_record->generated_at},
                       {"checksum", p.srs_record->checksum},
                       {"document_path", p.srs_record->document_path}};
  } else {
    j["srs_record"] = nullptr;
  }
  j["step_states"] = json::array();
  for (const auto& s : p.step_states)
    j["step_states"].push_back({{"step", s.step}, {"status", std::string(to_string(s.status))}});
  return j;
}

Project project_from_json(const json& j) {
  try {
    if (!j.is_object()) parse_error("project payload is not an object");
    Project p;
    p.project_id = j.at("project_id").get<std::string>();
    p.name = j.at("name").get<std::string>();
    p.default_method = parse_enum_field<RiskMethod>(j, "default_method", parse_risk_method);

    for (const auto& g : j.at("goals"))
      p.goals.push_back({g.at("id").get<std::string>(), g.at("description").get<std::string>(),
                         parse_enum_field<GoalSource>(g, "source", parse_goal_source)});

    for (const auto& s : j.at("stakeholders"))
      p.stakeholders.push_back(
          {s.at("id").get<std::string>(), s.at("name").get<std::string>(),
           parse_enum_field<StakeholderGroup>(s, "group", parse_stakeholder_group),
           parse_enum_field<StakeholderPriority>(s, "priority", parse_stakeholder_priority)});

    for (const auto& a : j.at("agreements"))
      p.agreements.push_back({a.at("goal_id").get<std::string>(), a.at("stakeholder_id").get<std::string>(),
                              parse_enum_field<AgreementVerdict>(a, "verdict", parse_agreement_verdict),
                              get_optional(a, "note")});

    for (const auto& a : j.at("assets")) {
      Asset asset{a.at("id").get<std::string>(), a.at("name").get<std::string>(),
                  a.at("description").get<std::string>(), {},
                  parse_enum_field<AssetPriority>(a, "priority", parse_asset_priority),
                  a.at("identified_by").get<std::vector<std::string>>()};
      for (const auto& f : a.at("cia")) {
        auto facet = parse_cia(f.get<std::string>());
        if (!facet) parse_error("bad CIA facet");
        asset.cia.insert(*facet);
      }
      p.assets.push_back(std::move(asset));
    }

    for (const auto& pt : j.at("attack_points"))
      p.attack_points.push_back({pt.at("id").get<std::string>(),
                                 parse_enum_field<PointKind>(pt, "kind", parse_point_kind),
                                 pt.at("name").get<std::string>(), pt.at("description").get<std::string>()});

    for (const auto& k : j.at("none_declared")) {
      auto kind = parse_point_kind(k.get<std::string>());
      if (!kind) parse_error("bad point kind in none_declared");
      p.none_declared.insert(*kind);
    }

    for (const auto& t : j.at("threats"))
      p.threats.push_back({t.at("id").get<std::string>(), t.at("title").get<std::string>(),
                           t.at("description").get<std::string>(), strides_from(t.at("stride")),
                           t.at("asset_refs").get<std::vector<std::string>>(),
                           t.at("point_refs").get<std::vector<std::string>>(),
                           t.at("mitigated").get<bool>()});

    for (const auto& r : j.at("assessments")) p.assessments.push_back(assessment_from(r));

    for (const auto& r : j.at("requirements")) {
      SecurityRequirement req{r.at("id").get<std::string>(), r.at("text").get<std::string>(),
                              r.at("threat_refs").get<std::vector<std::string>>(), std::nullopt};
      const auto& origin = r.at("origin");
      const auto kind = origin.at("kind").get<std::string>();
      if (kind == "Catalog") req.catalog_entry_id = origin.at("entry_id").get<std::string>();
      else if (kind != "Manual") parse_error("bad requirement origin '" + kind + "'");
      p.requirements.push_back(std::move(req));
    }

    for (const auto& v : j.at("validations"))
      p.validations.push_back({v.at("requirement_id").get<std::string>(), v.at("reviewer").get<std::string>(),
                               parse_enum_field<ValidationVerdict>(v, "verdict", parse_validation_verdict),
                               get_optional(v, "rationale")});

    if (const auto& s = j.at("srs_record"); !s.is_null())
      p.srs_record = SrsRecord{s.at("generated_at").get<std::string>(), s.at("checksum").get<std::string>(),
                               s.at("document_path").get<std::string>()};

    for (const auto& s : j.at("step_states"))
      p.step_states.push_back({s.at("step").get<int>(),
                               parse_enum_field<StepStatus>(s, "status", parse_step_status)});
    return p;
  } catch (const json::exception& e) {
    parse_error(e.what());
  }
}

std::string serialize(const Project& project) {
  const auto payload = project_to_json(project);
  json file = {{"schema_version", project.schema_version},
               {"integrity", {{"algorithm", std::string(kHashAlgorithm)},
                              {"digest", sha256_hex(payload.dump())}}},
               {"project", payload}};
  return file.dump(2) + "\n";
}

Project deserialize(std::string_view bytes) {
  json file;
  try {
    file = json::parse(bytes.begin(), bytes.end());
  } catch (const json::parse_error& e) {
    parse_error(e.what());
  }
  if (!file.is_object() || !file.contains("schema_version") || !file["schema_version"].is_number_integer())
    parse_error("missing integer schema_version");
  const int version = file["schema_version"].get<int>();
  if (version < 1 || version > kSchemaVersion) {
    throw Error(ErrorCode::UnsupportedSchemaVersion,
                "schema_version " + std::to_string(version) + " is not supported (max " +
                    std::to_string(kSchemaVersion) + ")",
                {{"schema_version", version}, {"supported", kSchemaVersion}});
  }
  if (!file.contains("integrity") || !file.contains("project")) parse_error("missing integrity or project");
  const auto& integrity = file["integrity"];
  std::string algorithm, digest;
  try {
    algorithm = integrity.at("algorithm").get<std::string>();
    digest = integrity.at("digest").get<std::string>();
  } catch (const json::exception& e) {
    parse_error(e.what());
  }
  if (algorithm != kHashAlgorithm) {
    throw Error(ErrorCode::IntegrityMismatch, "unsupported integrity algorithm '" + algorithm + "'",
                {{"algorithm", algorithm}});
  }
  const auto actual = sha256_hex(file["project"].dump());
  if (actual != digest) {
    throw Error(ErrorCode::IntegrityMismatch, "project payload does not match its integrity digest",
                {{"expected", digest}, {"actual", actual}});
  }
  auto project = project_from_json(file["project"]);
  project.schema_version = version;
  return project;
}

std::string save(const Project& project, const std::filesystem::path& destination) {
  if (auto violations = validate_project(project); !violations.empty()) {
    auto arr = json::array();
    for (const auto& v : violations) arr.push_back({{"entity", v.entity}, {"rule", v.rule}});
    throw Error(ErrorCode::InvalidProject,
                "project is invalid: " + violations.front().entity + " " + violations.front().rule,
                {{"violations", arr}});
  }
  const auto bytes = serialize(project);
  auto temp = destination;
  temp += ".tmp-" + std::to_string(::getpid()) + "-" + std::to_string(temp_counter++);
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) {
      std::error_code ec;
      std::filesystem::remove(temp, ec);
      throw Error(ErrorCode::IoFailure, "cannot write " + temp.string(), {{"path", destination.string()}});
    }
  }
  std::error_code ec;
  std::filesystem::rename(temp, destination, ec);
  if (ec) {
    std::filesystem::remove(temp, ec);
    throw Error(ErrorCode::IoFailure, "cannot replace " + destination.string(),
                {{"path", destination.string()}});
  }
  return bytes;
}

Project load(const std::filesystem::path& source) {
  std::ifstream in(source, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot read " + source.string(), {{"path", source.string()}});
  std::ostringstream buf;
  buf << in.rdbuf();
  auto project = deserialize(buf.str());
  if (auto violations = validate_project(project); !violations.empty()) {
    auto arr = json::array();
    for (const auto& v : violations) arr.push_back({{"entity", v.entity}, {"rule", v.rule}});
    throw Error(ErrorCode::InvalidProject,
                "project is invalid: " + violations.front().entity + " " + violations.front().rule,
                {{"violations", arr}});
  }
  return project;
}

}  // namespace store::persistence
