#pragma once

#include <memory>
#include <string>

#include <nlohmann/json.hpp>

#include "amir/cli/artifacts.hpp"
#include "amir/cli/config.hpp"
#include "amir/similarity.hpp"

namespace httplib {
class Server;
}

namespace amir::cli {

struct ServiceResponse {
  int status = 200;
  nlohmann::json body;
};

/// Request handling behind the HTTP endpoint, independent of the transport.
/// Artifacts are loaded once; a service built over an incomplete output
/// tree answers 503 until restarted.
class RebuttalService {
 public:
  explicit RebuttalService(const PipelineConfig& config);
  ~RebuttalService();

  bool ready() const noexcept { return artifacts_ != nullptr; }

  /// Body: {"text": string, "approach": "sm"|"fc", "k": positive integer}.
  ServiceResponse rebuttal(const std::string& body) const;
  ServiceResponse health() const;

 private:
  PipelineConfig config_;
  std::unique_ptr<Artifacts> artifacts_;
  std::unique_ptr<Normalizer> normalizer_;
  std::unique_ptr<SentencePairScorer> scorer_;
  std::string load_error_;
};

/// HTTP transport over a RebuttalService. Serves concurrently.
class HttpFrontend {
 public:
  explicit HttpFrontend(const RebuttalService& service);
  ~HttpFrontend();

  /// Binds to host:port (port 0 picks a free port); returns the bound port.
  int bind(const std::string& host, int port);
  /// Blocks until stop().
  void listen();
  void stop();

 private:
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace amir::cli
