#include "store/api.hpp"

#include <fstream>
#include <mutex>
#include <regex>
#include <sstream>

#include "httplib.h"
#include "store/analysis.hpp"
#include "store/commands.hpp"
#include "store/docgen.hpp"
#include "store/persistence.hpp"
#include "store/risk.hpp"
#include "store/text.hpp"
#include "store/views.hpp"
#include "store/workflow.hpp"

namespace store::api {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

Response json_response(int status, const json& body) { return {status, body.dump(), "application/json"}; }

Response error_response(const Error& e) { return json_response(http_status(e.code()), views::error(e)); }

[[noreturn]] void bad_body(const std::string& what) {
  throw Error(ErrorCode::ParseError, "request body: " + what, {{"reason", what}});
}

json parse_body(std::string_view body) {
  if (text::trim(body).empty()) return json::object();
  try {
    auto j = json::parse(body.begin(), body.end());
    if (!j.is_object()) bad_body("expected a JSON object");
    return j;
  } catch (const json::parse_error& e) {
    bad_body(e.what());
  }
}

std::string str(const json& body, const char* key, const std::string& fallback = "") {
  auto it = body.find(key);
  if (it == body.end() || it->is_null()) return fallback;
  if (!it->is_string()) bad_body(std::string("'") + key + "' must be a string");
  return it->get<std::string>();
}

std::string required_str(const json& body, const char* key) {
  if (!body.contains(key)) bad_body(std::string("missing '") + key + "'");
  return str(body, key);
}

std::optional<std::string> opt_str(const json& body, const char* key) {
  auto v = str(body, key);
  if (v.empty()) return std::nullopt;
  return v;
}

bool flag(const json& body, const char* key, bool fallback = false) {
  auto it = body.find(key);
  if (it == body.end() || it->is_null()) return fallback;
  if (!it->is_boolean()) bad_body(std::string("'") + key + "' must be a boolean");
  return it->get<bool>();
}

// Accepts ["A1","A2"] or "A1,A2".
std::vector<std::string> list(const json& body, const char* key) {
  auto it = body.find(key);
  if (it == body.end() || it->is_null()) return {};
  std::vector<std::string> out;
  if (it->is_string()) {
    for (const auto& part : text::split(it->get<std::string>(), ','))
      if (!text::trim(part).empty()) out.push_back(text::trim(part));
    return out;
  }
  if (!it->is_array()) bad_body(std::string("'") + key + "' must be an array of strings");
  for (const auto& v : *it) {
    if (!v.is_string()) bad_body(std::string("'") + key + "' must be an array of strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

template <typename E, typename Parser>
E enum_field(const json& body, const char* key, Parser parser, const std::string& fallback = "") {
  const auto text = str(body, key, fallback);
  if (text.empty()) bad_body(std::string("missing '") + key + "'");
  auto v = parser(text);
  if (!v) {
    throw Error(ErrorCode::InvariantViolation, std::string("invalid ") + key + " '" + text + "'",
                {{"field", key}, {"value", text}});
  }
  return *v;
}

template <typename T, typename Parser>
std::set<T> enum_set(const json& body, const char* key, Parser parser) {
  std::set<T> out;
  for (const auto& s : list(body, key)) {
    auto v = parser(s);
    if (!v) throw Error(ErrorCode::InvariantViolation, std::string("invalid ") + key + " '" + s + "'",
                        {{"field", key}, {"value", s}});
    out.insert(*v);
  }
  return out;
}

template <typename T>
std::string next_id(const std::string& prefix, const std::vector<T>& items) {
  long n = 0;
  for (const auto& x : items)
    if (x.id.rfind(prefix, 0) == 0) n = std::max(n, id_number(x.id).value_or(0));
  return prefix + std::to_string(n + 1);
}

template <typename T>
json encode_all(const std::vector<T>& items) {
  auto arr = json::array();
  for (const auto& x : items) arr.push_back(persistence::encode(x));
  return arr;
}

int ints_in_range(const json& v, const char* what) {
  if (!v.is_number_integer()) bad_body(std::string(what) + " must be integers");
  return v.get<int>();
}

RiskAssessment assessment_from_body(const std::string& threat_id, const json& body) {
  const bool has_dread = body.contains("dread");
  const bool has_simple = body.contains("simple");
  if (has_dread == has_simple) bad_body("give exactly one of 'dread' or 'simple'");
  if (has_dread) {
    const auto& d = body["dread"];
    if (d.is_array()) {
      if (d.size() != 5) bad_body("'dread' takes five components");
      std::array<int, 5> v{};
      for (std::size_t i = 0; i < 5; ++i) v[i] = ints_in_range(d[i], "'dread' components");
      return risk::assess_dread(threat_id, DreadComponents::from_array(v));
    }
    if (!d.is_object()) bad_body("'dread' must be an array or object");
    DreadComponents c;
    for (auto [key, field] : {std::pair{"damage", &c.damage}, std::pair{"reproducibility", &c.reproducibility},
                              std::pair{"exploitability", &c.exploitability},
                              std::pair{"affected_users", &c.affected_users},
                              std::pair{"discoverability", &c.discoverability}}) {
      if (!d.contains(key)) bad_body(std::string("'dread' missing '") + key + "'");
      *field = ints_in_range(d[key], "'dread' components");
    }
    return risk::assess_dread(threat_id, c);
  }
  const auto& s = body["simple"];
  if (s.is_array()) {
    if (s.size() != 2) bad_body("'simple' takes probability and damage potential");
    return risk::assess_simple(threat_id, ints_in_range(s[0], "'simple' inputs"), ints_in_range(s[1], "'simple' inputs"));
  }
  if (!s.is_object() || !s.contains("probability") || !s.contains("damage_potential"))
    bad_body("'simple' needs probability and damage_potential");
  return risk::assess_simple(threat_id, ints_in_range(s["probability"], "'simple' inputs"),
                             ints_in_range(s["damage_potential"], "'simple' inputs"));
}

std::string srs_path(const fs::path& project_path) {
  std::string p = project_path.string();
  const std::string ext(persistence::kFileExtension);
  if (p.size() > ext.size() && p.compare(p.size() - ext.size(), ext.size(), ext) == 0) p.resize(p.size() - ext.size());
  return p + ".srs.md";
}

[[noreturn]] void not_found(std::string_view method, std::string_view path) {
  throw Error(ErrorCode::NotFound, "no route " + std::string(method) + " " + std::string(path),
              {{"method", method}, {"path", path}});
}

int step_number(const std::string& s) {
  try {
    std::size_t used = 0;
    int v = std::stoi(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::StepOutOfRange, "step must be a number in 1..10", {{"step", s}});
}

const std::vector<std::string> kCollections = {"goals",  "stakeholders", "agreements", "assets",
                                               "points", "threats",      "requirements", "validations"};

}  // namespace

int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotFound:
      return 404;
    case ErrorCode::DuplicateId:
    case ErrorCode::StillReferenced:
    case ErrorCode::StepNotCurrent:
    case ErrorCode::ExitChecksFailed:
    case ErrorCode::StepNotStarted:
    case ErrorCode::StepNotReady:
    case ErrorCode::MissingAssessment:
    case ErrorCode::NothingToExport:
      return 409;
    case ErrorCode::DanglingReference:
    case ErrorCode::InvariantViolation:
    case ErrorCode::StepOutOfRange:
    case ErrorCode::OutOfRange:
    case ErrorCode::SyntaxError:
    case ErrorCode::DuplicateEntryId:
    case ErrorCode::EmptyField:
    case ErrorCode::InvalidProject:
    case ErrorCode::ParseError:
      return 422;
    case ErrorCode::IoFailure:
    case ErrorCode::IntegrityMismatch:
    case ErrorCode::UnsupportedSchemaVersion:
    case ErrorCode::BindFailure:
      return 500;
  }
  return 500;
}

struct Service::Request {
  std::string method;
  std::string path;
  std::vector<std::string> segments;  // after /api/v1
  const std::map<std::string, std::string>* query;
  std::string_view body;

  std::string param(const std::string& key, const std::string& fallback = "") const {
    auto it = query->find(key);
    return it == query->end() ? fallback : it->second;
  }
};

Service::Service(fs::path project_path, std::optional<catalog::Catalog> catalog)
    : project_path_(std::move(project_path)), catalog_(std::move(catalog)),
      project_(persistence::load(project_path_)) {}

Project Service::snapshot() const {
  std::shared_lock lock(mutex_);
  return project_;
}

Response Service::handle(std::string_view method, std::string_view path,
                         const std::map<std::string, std::string>& query, std::string_view body) {
  Request request{std::string(method), std::string(path), {}, &query, body};
  try {
    constexpr std::string_view prefix = "/api/v1";
    if (path.substr(0, prefix.size()) != prefix || (path.size() > prefix.size() && path[prefix.size()] != '/'))
      not_found(method, path);
    for (const auto& part : text::split(path.substr(prefix.size()), '/'))
      if (!part.empty()) request.segments.push_back(part);
    return route(request);
  } catch (const Error& e) {
    return error_response(e);
  } catch (const std::exception& e) {
    return error_response(Error(ErrorCode::IoFailure, e.what()));
  }
}

Response Service::route(const Request& r) {
  if (r.method == "GET") {
    std::shared_lock lock(mutex_);
    return read(r);
  }
  if (r.method == "POST" || r.method == "PUT" || r.method == "PATCH" || r.method == "DELETE") {
    std::unique_lock lock(mutex_);
    return write(r);
  }
  not_found(r.method, r.path);
}

Response Service::read(const Request& r) {
  const auto& s = r.segments;
  const auto& p = project_;
  if (s.size() == 1 && s[0] == "project") return json_response(200, persistence::project_to_json(p));
  if (s.size() == 1) {
    if (s[0] == "goals") return json_response(200, encode_all(p.goals));
    if (s[0] == "stakeholders") return json_response(200, encode_all(p.stakeholders));
    if (s[0] == "agreements") return json_response(200, encode_all(p.agreements));
    if (s[0] == "assets") return json_response(200, encode_all(p.assets));
    if (s[0] == "points") {
      auto j = encode_all(p.attack_points);
      return json_response(200, j);
    }
    if (s[0] == "threats") return json_response(200, encode_all(p.threats));
    if (s[0] == "requirements") {
      auto j = encode_all(p.requirements);
      for (auto& item : j)
        item["outcome"] = std::string(to_string(requirement_outcome(p, item["id"].get<std::string>())));
      return json_response(200, j);
    }
    if (s[0] == "validations") return json_response(200, encode_all(p.validations));
    if (s[0] == "workflow") return json_response(200, views::workflow(p));
    if (s[0] == "risk") return json_response(200, encode_all(p.assessments));
  }
  if (s.size() == 2 && s[0] == "risk" && s[1] == "ranking") return json_response(200, views::ranking(p));
  if (s.size() == 2 && s[0] == "risk") {
    const auto* a = p.find_assessment(s[1]);
    if (!a) throw Error(ErrorCode::NotFound, "no assessment for " + s[1], {{"id", s[1]}});
    return json_response(200, persistence::encode(*a));
  }
  if (s.size() == 3 && s[0] == "workflow" && s[2] == "checks")
    return json_response(200, views::exit_checks(workflow::exit_checks(p, step_number(s[1]))));
  if (s.size() == 2 && s[0] == "reports") {
    if (s[1] == "coverage") return json_response(200, views::coverage(analysis::coverage_report(p)));
    if (s[1] == "surface") {
      auto j = views::surface(analysis::surface_summary(p));
      for (PointKind k : p.none_declared) j[std::string(to_string(k))]["none_declared"] = true;
      return json_response(200, j);
    }
    if (s[1] == "cia") return json_response(200, views::cia(analysis::cia_summary(p)));
  }
  if (s.size() == 2 && s[0] == "suggest" && s[1] == "stride")
    return json_response(200, views::stride(analysis::stride_suggest(r.param("text"), "")));
  if (s.size() == 3 && s[0] == "suggest" && s[1] == "requirements") {
    const auto* t = p.find_threat(s[2]);
    if (!t) throw Error(ErrorCode::NotFound, "no threat " + s[2], {{"id", s[2]}});
    if (!catalog_) throw Error(ErrorCode::NotFound, "the service has no catalog loaded", {{"catalog", nullptr}});
    int limit = 5;
    try {
      limit = std::stoi(r.param("limit", "5"));
    } catch (const std::exception&) {
      throw Error(ErrorCode::OutOfRange, "limit must be a positive integer", {{"limit", r.param("limit")}});
    }
    return json_response(200, views::suggestions(catalog::suggest(*t, *catalog_, limit), *catalog_));
  }
  if (s.size() == 3 && s[0] == "document" && s[1] == "export") {
    const auto kind = docgen::parse_export_kind(s[2]);
    if (!kind) throw Error(ErrorCode::NotFound, "unknown export kind " + s[2], {{"kind", s[2]}});
    return {200, docgen::export_table(p, *kind), "text/csv; charset=utf-8"};
  }
  if (s.size() == 2 && s[0] == "document" && s[1] == "srs") {
    return json_response(200, views::srs(docgen::build_srs(p, p.srs_record ? p.srs_record->generated_at : "")));
  }
  not_found(r.method, r.path);
}

Response Service::write(const Request& r) {
  const auto& s = r.segments;
  const auto body = parse_body(r.body);
  Project next = project_;
  json payload;
  int status = 200;

  if (r.method == "POST" && s.size() == 1) {
    const auto& c = s[0];
    if (c == "goals") {
      Goal g{str(body, "id", next_id("G", next.goals)), required_str(body, "description"),
             enum_field<GoalSource>(body, "source", parse_goal_source, "interview")};
      next = commands::add(std::move(next), g);
      payload = persistence::encode(g);
      status = 201;
    } else if (c == "stakeholders") {
      Stakeholder st{str(body, "id", next_id("SH", next.stakeholders)), required_str(body, "name"),
                     enum_field<StakeholderGroup>(body, "group", parse_stakeholder_group, "other"),
                     enum_field<StakeholderPriority>(body, "priority", parse_stakeholder_priority)};
      next = commands::add(std::move(next), st);
      payload = persistence::encode(st);
      status = 201;
    } else if (c == "agreements") {
      Agreement a{required_str(body, "goal_id"), required_str(body, "stakeholder_id"),
                  enum_field<AgreementVerdict>(body, "verdict", parse_agreement_verdict, "agreed"),
                  opt_str(body, "note")};
      next = commands::record_agreement(std::move(next), a);
      payload = persistence::encode(a);
    } else if (c == "assets") {
      Asset a{str(body, "id", next_id("A", next.assets)), required_str(body, "name"), str(body, "description"),
              enum_set<CiaFacet>(body, "cia", parse_cia),
              enum_field<AssetPriority>(body, "priority", parse_asset_priority), list(body, "identified_by")};
      next = commands::add(std::move(next), a);
      payload = persistence::encode(a);
      status = 201;
    } else if (c == "points") {
      const auto kind = enum_field<PointKind>(body, "kind", parse_point_kind);
      if (flag(body, "none_declared")) {
        next = commands::declare_no_points(std::move(next), kind);
        payload = {{"none_declared", std::string(to_string(kind))}};
      } else {
        long n = 0;
        for (const auto& x : next.attack_points)
          if (x.kind == kind) n = std::max(n, id_number(x.id).value_or(0));
        AttackPoint pt{str(body, "id", std::string(point_prefix(kind)) + std::to_string(n + 1)), kind,
                       required_str(body, "name"), str(body, "description")};
        next = commands::add(std::move(next), pt);
        payload = persistence::encode(pt);
        status = 201;
      }
    } else if (c == "threats") {
      Threat t{str(body, "id", next_id("T", next.threats)), required_str(body, "title"), str(body, "description"),
               enum_set<Stride>(body, "stride", parse_stride), list(body, "asset_refs"), list(body, "point_refs"),
               flag(body, "mitigated")};
      next = commands::add(std::move(next), t);
      payload = persistence::encode(t);
      status = 201;
    } else if (c == "requirements") {
      SecurityRequirement req{str(body, "id", next_id("SR", next.requirements)), required_str(body, "text"),
                              list(body, "threat_refs"), std::nullopt};
      next = commands::add(std::move(next), req);
      payload = persistence::encode(req);
      status = 201;
    } else if (c == "validations") {
      ValidationRecord v{required_str(body, "requirement_id"), required_str(body, "reviewer"),
                         enum_field<ValidationVerdict>(body, "verdict", parse_validation_verdict, "accepted"),
                         opt_str(body, "rationale")};
      next = commands::record_validation(std::move(next), v);
      payload = persistence::encode(v);
    } else if (c == "elicit") {
      std::optional<catalog::Catalog> inline_catalog;
      if (body.contains("catalog")) inline_catalog = catalog::parse_catalog(body["catalog"].dump());
      else if (auto path = str(body, "catalog_path"); !path.empty()) inline_catalog = catalog::load_catalog(path);
      const catalog::Catalog* cat = inline_catalog ? &*inline_catalog : catalog_ ? &*catalog_ : nullptr;
      if (!cat) throw Error(ErrorCode::NotFound, "the service has no catalog loaded", {{"catalog", nullptr}});
      auto result = commands::elicit(std::move(next), *cat);
      payload = views::elicitation(result);
      next = std::move(result.project);
    } else {
      not_found(r.method, r.path);
    }
  } else if (r.method == "PUT" && s.size() == 2 && s[0] == "risk") {
    if (!next.find_threat(s[1])) throw Error(ErrorCode::NotFound, "no threat " + s[1], {{"id", s[1]}});
    if (body.contains("dread") || body.contains("simple"))
      next = commands::set_risk(std::move(next), assessment_from_body(s[1], body));
    if (body.contains("excluded"))
      next = commands::exclude(std::move(next), s[1], flag(body, "excluded"), str(body, "exclusion_rationale"));
    const auto* a = next.find_assessment(s[1]);
    if (!a) bad_body("give 'dread' or 'simple'");
    payload = persistence::encode(*a);
  } else if (r.method == "PATCH" && s.size() == 2 && s[0] == "threats") {
    if (!next.find_threat(s[1])) throw Error(ErrorCode::NotFound, "no threat " + s[1], {{"id", s[1]}});
    if (body.contains("stride")) next = commands::tag_threat(std::move(next), s[1], enum_set<Stride>(body, "stride", parse_stride));
    if (body.contains("asset_refs") || body.contains("point_refs"))
      next = commands::link_threat(std::move(next), s[1], list(body, "asset_refs"), list(body, "point_refs"));
    if (body.contains("mitigated")) next = commands::set_mitigated(std::move(next), s[1], flag(body, "mitigated"));
    payload = persistence::encode(*next.find_threat(s[1]));
  } else if (r.method == "DELETE" && s.size() == 2 &&
             std::find(kCollections.begin(), kCollections.end(), s[0]) != kCollections.end() &&
             s[0] != "agreements" && s[0] != "validations") {
    next = commands::remove(std::move(next), s[1]);
    payload = {{"removed", s[1]}};
  } else if (r.method == "POST" && s.size() == 3 && s[0] == "workflow" && (s[2] == "complete" || s[2] == "reopen")) {
    const int step = step_number(s[1]);
    next = s[2] == "complete" ? workflow::complete_step(std::move(next), step)
                              : workflow::reopen_step(std::move(next), step);
    payload = views::workflow(next);
  } else if (r.method == "POST" && s.size() == 2 && s[0] == "document" && s[1] == "srs") {
    const auto path = srs_path(project_path_);
    auto out = commands::generate_srs(std::move(next), str(body, "generated_at", docgen::utc_timestamp()), path);
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    file << out.document.render();
    if (!file.flush()) throw Error(ErrorCode::IoFailure, "cannot write " + path, {{"path", path}});
    payload = views::srs(out.document);
    payload["path"] = path;
    next = std::move(out.project);
  } else {
    not_found(r.method, r.path);
  }

  if (!(next == project_)) {
    persistence::save(next, project_path_);
    project_ = std::move(next);
  }
  return json_response(status, payload);
}

struct HttpServer::Impl {
  Service& service;
  httplib::Server server;
  std::optional<fs::path> ui_dir;

  Impl(Service& s, std::optional<fs::path> ui) : service(s), ui_dir(std::move(ui)) {}
};

HttpServer::HttpServer(Service& service, std::optional<fs::path> ui_dir)
    : impl_(std::make_unique<Impl>(service, std::move(ui_dir))) {
  auto handler = [this](const httplib::Request& req, httplib::Response& res) {
    std::map<std::string, std::string> query;
    for (const auto& [k, v] : req.params) query.emplace(k, v);
    const auto out = impl_->service.handle(req.method, req.path, query, req.body);
    res.status = out.status;
    res.set_content(out.body, out.content_type);
  };
  const std::string pattern = R"(/api/v1(/.*)?)";
  impl_->server.Get(pattern, handler);
  impl_->server.Post(pattern, handler);
  impl_->server.Put(pattern, handler);
  impl_->server.Patch(pattern, handler);
  impl_->server.Delete(pattern, handler);
  if (impl_->ui_dir) impl_->server.set_mount_point("/", impl_->ui_dir->string());
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& address) {
  const auto colon = address.rfind(':');
  std::string host = colon == std::string::npos ? address : address.substr(0, colon);
  const std::string port_text = colon == std::string::npos ? "" : address.substr(colon + 1);
  if (host.empty()) host = "127.0.0.1";
  int port = -1;
  try {
    std::size_t used = 0;
    port = std::stoi(port_text, &used);
    if (used != port_text.size()) port = -1;
  } catch (const std::exception&) {
  }
  if (port < 0 || port > 65535)
    throw Error(ErrorCode::BindFailure, "bad bind address '" + address + "' (expected host:port)", {{"address", address}});
  int bound = port;
  if (port == 0) bound = impl_->server.bind_to_any_port(host);
  else if (!impl_->server.bind_to_port(host, port)) bound = -1;
  if (bound <= 0)
    throw Error(ErrorCode::BindFailure, "cannot bind " + address, {{"address", address}});
  return bound;
}

void HttpServer::run() { impl_->server.listen_after_bind(); }

void HttpServer::stop() {
  if (impl_) impl_->server.stop();
}

}  // namespace store::api
