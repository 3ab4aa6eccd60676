#include "transrel/service.hpp"

#include <mutex>

#include <httplib.h>
#include <json.hpp>

#include "transrel/ingest.hpp"
#include "transrel/preannotate.hpp"
#include "transrel/text.hpp"
#include "transrel/validate.hpp"

namespace transrel {

using nlohmann::json;

const std::vector<PaletteEntry>& relation_palette() {
  static const std::vector<PaletteEntry> kPalette = {
      {RelationLabel::literal, "yellow", "#f5d90a", false, "annotatable"},
      {RelationLabel::equivalence, "orange", "#f28c28", false, "annotatable"},
      {RelationLabel::transposition, "green", "#3cb44b", false, "annotatable"},
      {RelationLabel::modulation, "light blue", "#8fd3fe", false, "annotatable"},
      {RelationLabel::modulation_transposition, "green", "#3cb44b", true, "annotatable"},
      {RelationLabel::generalization, "brown", "#9a6324", false, "annotatable"},
      {RelationLabel::particularization, "red", "#e6194b", false, "annotatable"},
      {RelationLabel::figurative, "pink", "#f4a6c6", false, "annotatable"},
      {RelationLabel::lexical_shift, "purple", "#911eb4", false, "annotatable"},
      {RelationLabel::uncertain, "light red", "#ff7f7f", false, "annotatable"},
      {RelationLabel::translation_error, "deep blue", "#1f3a93", false, "annotatable"},
      {RelationLabel::no_type, "grey", "#a9a9a9", false, "structural"},
      {RelationLabel::unaligned_explicitation, "white", "#ffffff", true, "structural"},
      {RelationLabel::unaligned_reduction, "light grey", "#d3d3d3", true, "structural"},
  };
  return kPalette;
}

namespace {

HttpResponse json_response(int status, const json& body) {
  return {status, body.dump(), "application/json"};
}

HttpResponse error_response(int status, const std::string& code, const std::string& message) {
  return json_response(status, {{"error", code}, {"message", message}});
}

json unit_json(const AlignedUnit& unit) {
  json j = {{"src", unit.src},
            {"tgt", unit.tgt},
            {"relation", std::string(to_string(unit.relation))},
            {"provenance", std::string(to_string(unit.provenance))}};
  if (unit.sub) j["sub"] = *unit.sub;
  return j;
}

json violation_json(const Violation& v) {
  json j = {{"code", v.code}, {"side", std::string(to_string(v.locus.side))}, {"message", v.message}};
  if (v.locus.token) j["token"] = *v.locus.token;
  if (v.locus.unit) j["unit"] = *v.locus.unit;
  return j;
}

std::vector<std::string> path_segments(const std::string& path) {
  std::vector<std::string> out;
  for (auto part : split(path, '/')) {
    if (!part.empty()) out.emplace_back(part);
  }
  return out;
}

}  // namespace

AnnotationService::AnnotationService(Project project, ServiceOptions options)
    : project_(std::move(project)), options_(std::move(options)) {
  reference_state_.resize(project_.reference.corpus.sentences.size());
  candidate_state_.resize(project_.candidate.corpus.sentences.size());
}

std::vector<AnnotationService::SentenceState>& AnnotationService::states(Role role) {
  return role == Role::reference ? reference_state_ : candidate_state_;
}

const std::vector<AnnotationService::SentenceState>& AnnotationService::states(
    Role role) const {
  return role == Role::reference ? reference_state_ : candidate_state_;
}

HttpResponse AnnotationService::handle(const std::string& method, const std::string& path,
                                       const std::map<std::string, std::string>& query,
                                       const std::string& body) {
  Role role = options_.default_role;
  if (const auto it = query.find("corpus"); it != query.end()) {
    try {
      role = parse_role(it->second);
    } catch (const Error& e) {
      return error_response(400, e.code(), e.what());
    }
  }

  const auto seg = path_segments(path);
  if (seg.size() < 2 || seg[0] != "api") return error_response(404, "NOT_FOUND", path);

  const auto allow = [&](const char* expected) { return method == expected; };
  const auto not_allowed = [&] {
    return error_response(405, "METHOD_NOT_ALLOWED", method + " " + path);
  };

  if (seg.size() == 2) {
    if (seg[1] == "health") {
      if (!allow("GET")) return not_allowed();
      return {200, "ok", "text/plain"};
    }
    if (seg[1] == "project") {
      if (!allow("GET")) return not_allowed();
      std::shared_lock lock(mutex_);
      return project_summary(role);
    }
    if (seg[1] == "palette") {
      if (!allow("GET")) return not_allowed();
      json entries = json::array();
      for (const auto& p : relation_palette()) {
        entries.push_back({{"relation", std::string(to_string(p.relation))},
                           {"color", p.color},
                           {"hex", p.hex},
                           {"pattern", p.pattern},
                           {"group", p.group}});
      }
      return json_response(200, {{"entries", entries}});
    }
    if (seg[1] == "flush") {
      if (!allow("POST")) return not_allowed();
      try {
        return json_response(200, {{"written", flush()}});
      } catch (const Error& e) {
        return error_response(500, e.code(), e.what());
      }
    }
    if (seg[1] == "sentences") {
      if (!allow("GET")) return not_allowed();
      std::shared_lock lock(mutex_);
      const auto& corpus = project_.side(role).corpus;
      json list = json::array();
      for (std::size_t k = 0; k < corpus.sentences.size(); ++k) {
        const auto& s = corpus.sentences[k];
        list.push_back({{"id", s.id},
                        {"genre", s.genre},
                        {"units", s.units.size()},
                        {"complete", validate(s, ValidationMode::complete).ok()},
                        {"revision", states(role)[k].revision}});
      }
      return json_response(200, {{"sentences", list}});
    }
  }

  if (seg[1] == "sentences" && (seg.size() == 3 || seg.size() == 4)) {
    const std::string& id = seg[2];
    if (seg.size() == 3) {
      if (!allow("GET")) return not_allowed();
      std::shared_lock lock(mutex_);
      return get_sentence(role, id);
    }
    if (seg[3] == "units") {
      if (!allow("PUT")) return not_allowed();
      std::unique_lock lock(mutex_);
      return put_units(role, id, body);
    }
    if (seg[3] == "suggest") {
      if (!allow("POST")) return not_allowed();
      std::shared_lock lock(mutex_);
      return suggest(role, id);
    }
  }
  return error_response(404, "NOT_FOUND", path);
}

HttpResponse AnnotationService::project_summary(Role role) const {
  const auto& side = project_.side(role);
  json genres = json::array();
  for (const auto& g : genres_in(side.corpus)) {
    std::size_t n = 0;
    for (const auto& s : side.corpus.sentences) n += s.genre == g;
    genres.push_back({{"name", g}, {"sentences", n}});
  }
  return json_response(200, {{"project", project_.manifest.project},
                             {"corpus", std::string(to_string(role))},
                             {"corpusName", side.corpus.name},
                             {"sentenceCount", side.corpus.sentences.size()},
                             {"hasAlignment", side.has_alignment},
                             {"genres", genres}});
}

HttpResponse AnnotationService::get_sentence(Role role, const std::string& id) const {
  const auto& side = project_.side(role);
  const SentencePair* s = side.corpus.find(id);
  if (!s) return error_response(404, "UNKNOWN_SENTENCE", "no sentence '" + id + "'");
  const std::size_t k = static_cast<std::size_t>(s - side.corpus.sentences.data());

  json units = json::array();
  for (const auto& u : s->units) units.push_back(unit_json(u));
  json suggestions = json::array();
  for (const auto& sug : suggestion_delta(*s, side.edges.at(k))) {
    json j = unit_json(sug.unit);
    j["confidence"] = std::string(to_string(sug.confidence));
    j["ruleId"] = sug.rule_id;
    suggestions.push_back(std::move(j));
  }
  json edges = json::array();
  for (const auto& e : side.edges.at(k)) edges.push_back({e.src, e.tgt});

  return json_response(200, {{"id", s->id},
                             {"genre", s->genre},
                             {"source", s->src_tokens},
                             {"target", s->tgt_tokens},
                             {"edges", edges},
                             {"units", units},
                             {"suggestions", suggestions},
                             {"revision", states(role)[k].revision}});
}

HttpResponse AnnotationService::put_units(Role role, const std::string& id,
                                          const std::string& body) {
  auto& side = project_.side(role);
  SentencePair* s = side.corpus.find(id);
  if (!s) return error_response(404, "UNKNOWN_SENTENCE", "no sentence '" + id + "'");
  SentenceState& state = states(role)[static_cast<std::size_t>(s - side.corpus.sentences.data())];

  json request;
  try {
    request = json::parse(body);
  } catch (const json::parse_error& e) {
    return error_response(400, "MALFORMED_REQUEST", e.what());
  }
  if (!request.is_object() || !request.contains("units") || !request["units"].is_array() ||
      !request.contains("expectedRevision") ||
      !request["expectedRevision"].is_number_unsigned()) {
    return error_response(400, "MALFORMED_REQUEST",
                          "body must be {\"units\":[...],\"expectedRevision\":n}");
  }
  const auto expected = request["expectedRevision"].get<std::size_t>();
  if (expected != state.revision) {
    return json_response(409, {{"error", "STALE_REVISION"},
                               {"message", "sentence changed since revision " +
                                               std::to_string(expected)},
                               {"revision", state.revision}});
  }

  // Units go through the annotation-file parser so both paths accept the same records.
  std::string records;
  for (const auto& u : request["units"]) {
    if (!u.is_object()) return error_response(400, "MALFORMED_RECORD", "unit is not an object");
    json record = u;
    record["id"] = id;
    records += record.dump() + "\n";
  }
  SentencePair candidate = *s;
  try {
    auto parsed = parse_annotations(records);
    const auto it = parsed.value.units.find(id);
    candidate.units = it == parsed.value.units.end() ? std::vector<AlignedUnit>{} : it->second;
  } catch (const ParseError& e) {
    json j = {{"error", e.code()}, {"message", e.what()}, {"unit", e.line() - 1}};
    return json_response(400, j);
  }

  const auto report = validate(candidate, ValidationMode::draft);
  if (!report.ok()) {
    json violations = json::array();
    for (const auto& v : report.violations) violations.push_back(violation_json(v));
    return json_response(400, {{"error", "VALIDATION_FAILED"},
                               {"message", "units fail draft validation"},
                               {"violations", violations}});
  }

  s->units = std::move(candidate.units);
  ++state.revision;
  state.dirty = true;
  json reply = {{"revision", state.revision}};
  if (request.contains("annotator") && request["annotator"].is_string()) {
    reply["annotator"] = request["annotator"];
  }
  return json_response(200, reply);
}

HttpResponse AnnotationService::suggest(Role role, const std::string& id) const {
  const auto& side = project_.side(role);
  const SentencePair* s = side.corpus.find(id);
  if (!s) return error_response(404, "UNKNOWN_SENTENCE", "no sentence '" + id + "'");
  const std::size_t k = static_cast<std::size_t>(s - side.corpus.sentences.data());
  json suggestions = json::array();
  for (const auto& sug : suggestion_delta(*s, side.edges.at(k))) {
    json j = unit_json(sug.unit);
    j["confidence"] = std::string(to_string(sug.confidence));
    j["ruleId"] = sug.rule_id;
    suggestions.push_back(std::move(j));
  }
  return json_response(200, {{"id", s->id}, {"suggestions", suggestions}});
}

std::size_t AnnotationService::flush() {
  std::unique_lock lock(mutex_);
  std::size_t written = 0;
  for (Role role : {Role::reference, Role::candidate}) {
    auto& st = states(role);
    std::size_t dirty = 0;
    for (const auto& s : st) dirty += s.dirty;
    if (dirty == 0) continue;
    write_file_atomic(project_.manifest.files(role).annotations,
                      serialize_annotations(project_.side(role).corpus));
    project_.side(role).annotations_present = true;
    for (auto& s : st) s.dirty = false;
    written += dirty;
  }
  return written;
}

// --- HTTP transport ------------------------------------------------------------

struct HttpServer::Impl {
  AnnotationService& service;
  httplib::Server server;

  explicit Impl(AnnotationService& s) : service(s) {
    // SO_REUSEADDR only: httplib's default SO_REUSEPORT would let a second
    // server share a port that is already in use.
    server.set_socket_options([](socket_t sock) {
      int yes = 1;
      setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
    });
    const auto dispatch = [this](const httplib::Request& req, httplib::Response& res) {
      std::map<std::string, std::string> query;
      for (const auto& [k, v] : req.params) query.emplace(k, v);
      const auto reply = service.handle(req.method, req.path, query, req.body);
      res.status = reply.status;
      res.set_content(reply.body, reply.content_type);
    };
    server.Get(R"(/api/.*)", dispatch);
    server.Put(R"(/api/.*)", dispatch);
    server.Post(R"(/api/.*)", dispatch);
    server.Delete(R"(/api/.*)", dispatch);
    if (service.options().static_dir) server.set_mount_point("/", *service.options().static_dir);
  }
};

HttpServer::HttpServer(AnnotationService& service) : impl_(std::make_unique<Impl>(service)) {}

HttpServer::~HttpServer() { stop(); }

bool HttpServer::bind(const std::string& host, int port) {
  return impl_->server.bind_to_port(host, port);
}

int HttpServer::bind_any(const std::string& host) {
  return impl_->server.bind_to_any_port(host);
}

bool HttpServer::listen() { return impl_->server.listen_after_bind(); }

void HttpServer::stop() {
  if (impl_) impl_->server.stop();
}

void HttpServer::wait_until_ready() const { impl_->server.wait_until_ready(); }

}  // namespace transrel
