#pragma once

#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "transrel/project.hpp"

namespace transrel {

/// Display color of one relation label in the editor.
struct PaletteEntry {
  RelationLabel relation;
  std::string color;   // color name shown to annotators
  std::string hex;
  bool pattern = false;  // drawn with a hatch overlay to separate equal colors
  std::string group;     // "annotatable" (drop list) or "structural"
};

const std::vector<PaletteEntry>& relation_palette();

struct ServiceOptions {
  Role default_role = Role::reference;
  std::optional<std::string> static_dir;
};

struct HttpResponse {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

/// Annotation backend state plus request handling, independent of the HTTP
/// transport. Thread-safe: reads share a lock, writes and flushes take it
/// exclusively.
class AnnotationService {
 public:
  AnnotationService(Project project, ServiceOptions options = {});

  /// Routes one request. `query` holds decoded query parameters.
  HttpResponse handle(const std::string& method, const std::string& path,
                      const std::map<std::string, std::string>& query,
                      const std::string& body);

  /// Writes the annotation file of every corpus with unsaved edits; returns
  /// the number of sentences persisted.
  std::size_t flush();

  const ServiceOptions& options() const noexcept { return options_; }

 private:
  struct SentenceState {
    std::size_t revision = 0;
    bool dirty = false;
  };

  HttpResponse project_summary(Role role) const;
  HttpResponse get_sentence(Role role, const std::string& id) const;
  HttpResponse put_units(Role role, const std::string& id, const std::string& body);
  HttpResponse suggest(Role role, const std::string& id) const;
  std::vector<SentenceState>& states(Role role);
  const std::vector<SentenceState>& states(Role role) const;

  Project project_;
  ServiceOptions options_;
  std::vector<SentenceState> reference_state_;
  std::vector<SentenceState> candidate_state_;
  mutable std::shared_mutex mutex_;
};

/// HTTP/1.1 transport for an AnnotationService. Static assets, when
/// configured, are served from "/".
class HttpServer {
 public:
  explicit HttpServer(AnnotationService& service);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Returns false when the address cannot be bound (e.g. port in use).
  bool bind(const std::string& host, int port);
  /// Binds an ephemeral port and returns it, or -1.
  int bind_any(const std::string& host);
  /// Serves until stop(); returns false if the server failed.
  bool listen();
  void stop();
  void wait_until_ready() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace transrel
