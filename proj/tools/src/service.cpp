#include "amir/cli/service.hpp"

#include <httplib.h>

#include "amir/cli/pipeline.hpp"
#include "amir/error.hpp"
#include "amir/json_io.hpp"

namespace amir::cli {
namespace {

using nlohmann::json;

constexpr std::size_t kMaxK = 1000;

ServiceResponse error_response(int status, const std::string& message) {
  return {status, {{"error", message}}};
}

bool blank(const std::string& s) { return s.find_first_not_of(" \t\r\n\f\v") == std::string::npos; }

}  // namespace

RebuttalService::RebuttalService(const PipelineConfig& config) : config_(config) {
  try {
    auto artifacts = std::make_unique<Artifacts>(load_artifacts(config_));
    normalizer_ = std::make_unique<Normalizer>(make_normalizer(config_));
    scorer_ = make_scorer(config_, *normalizer_);
    artifacts_ = std::move(artifacts);
  } catch (const std::exception& e) {
    load_error_ = e.what();
  }
}

RebuttalService::~RebuttalService() = default;

ServiceResponse RebuttalService::health() const {
  if (!artifacts_) return {503, {{"status", "unavailable"}, {"error", load_error_}, {"artifacts", json::object()}}};
  return {200, {{"status", "ok"}, {"artifacts", artifacts_->hashes}}};
}

ServiceResponse RebuttalService::rebuttal(const std::string& body) const {
  if (!artifacts_) return error_response(503, "artifacts unavailable: " + load_error_);

  json req;
  try {
    req = json::parse(body);
  } catch (const json::exception&) {
    return error_response(400, "request body is not valid JSON");
  }
  if (!req.is_object()) return error_response(400, "request must be a JSON object");
  auto text_it = req.find("text");
  if (text_it == req.end() || !text_it->is_string()) return error_response(400, "'text' must be a string");
  const std::string text = text_it->get<std::string>();
  if (blank(text)) return error_response(400, "'text' is empty");

  std::string approach = "fc";
  if (auto it = req.find("approach"); it != req.end()) {
    if (!it->is_string()) return error_response(400, "'approach' must be \"sm\" or \"fc\"");
    approach = it->get<std::string>();
    if (approach != "sm" && approach != "fc") return error_response(400, "'approach' must be \"sm\" or \"fc\"");
  }
  std::size_t k = approach == "sm" ? config_.k_sm : config_.k_fc;
  if (auto it = req.find("k"); it != req.end()) {
    if (!it->is_number_integer() || it->get<long long>() < 1 || it->get<long long>() > static_cast<long long>(kMaxK)) {
      return error_response(400, "'k' must be an integer in [1, " + std::to_string(kMaxK) + "]");
    }
    k = static_cast<std::size_t>(it->get<long long>());
  }

  const Artifacts& a = *artifacts_;
  AnnotatedTweet query;
  query.tweet.id = "query";
  query.tweet.text = text;
  query.tweet.misleading = true;
  const TokenStream tokens = (*normalizer_)(tokenize(text, query.tweet.id));
  TopicAssignment topic = assign(a.tweet_model, a.tweet_labels, a.tweet_thresholds, tokens);
  if (!topic.known()) {
    const std::pair<std::string, TokenStream> one{query.tweet.id, tokens};
    auto filled = synonym_backfill(std::span(&one, 1), a.tweet_labels, *normalizer_);
    if (filled.front().known()) topic = filled.front();
  }
  query.topic = topic;
  query.entities = recognize(text, a.gazetteer);
  query.sentiment = classify_sentiment(text, a.lexicon);

  try {
    json out;
    if (approach == "sm") {
      out = recommendation_json(
          recommend_counter_tweets(query, a.pool, k, config_.strict, config_.relaxed, *scorer_));
    } else {
      out = recommendation_json(tiered_recommend(query, ArticleIndex{a.articles, a.article_assignments},
                                                 a.mappings, a.cooccurrence, *scorer_,
                                                 config_.specific_threshold, k));
    }
    out["topic"] = label_or_unknown(topic.primary);
    return {200, out};
  } catch (const NoTopicAssignment&) {
    return error_response(422, "the text could not be assigned a topic");
  }
}

HttpFrontend::HttpFrontend(const RebuttalService& service) : server_(std::make_unique<httplib::Server>()) {
  auto reply = [](httplib::Response& res, const ServiceResponse& r) {
    res.status = r.status;
    res.set_content(r.body.dump(), "application/json");
  };
  server_->Post("/v1/rebuttal", [&service, reply](const httplib::Request& req, httplib::Response& res) {
    try {
      reply(res, service.rebuttal(req.body));
    } catch (const std::exception& e) {
      reply(res, error_response(500, e.what()));
    }
  });
  server_->Get("/v1/health", [&service, reply](const httplib::Request&, httplib::Response& res) {
    reply(res, service.health());
  });
}

HttpFrontend::~HttpFrontend() { stop(); }

int HttpFrontend::bind(const std::string& host, int port) {
  if (port == 0) {
    const int p = server_->bind_to_any_port(host);
    if (p < 0) throw Error("cannot bind " + host);
    return p;
  }
  if (!server_->bind_to_port(host, port)) throw Error("cannot bind " + host + ":" + std::to_string(port));
  return port;
}

void HttpFrontend::listen() { server_->listen_after_bind(); }

void HttpFrontend::stop() {
  if (server_) server_->stop();
}

}  // namespace amir::cli
