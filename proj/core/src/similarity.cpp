#include "amir/similarity.hpp"

#include <sys/socket.h>
#include <sys/types.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "amir/error.hpp"

namespace amir {
namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::optional<double> parse_real(std::string_view s) {
  std::string buf(s);
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(buf.c_str(), &end);
  if (end != buf.c_str() + buf.size() || buf.empty() || errno == ERANGE || !std::isfinite(v)) {
    return std::nullopt;
  }
  return v;
}

std::optional<std::size_t> parse_count(std::string_view s) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    return std::nullopt;
  }
  return static_cast<std::size_t>(std::stoull(std::string(s)));
}

std::mutex& provider_mutex() {
  static std::mutex mu;
  return mu;
}

}  // namespace

// ---- word vectors -------------------------------------------------------------

WordVectorTable WordVectorTable::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open word vectors " + path.string());
  return read(in);
}

WordVectorTable WordVectorTable::read(std::istream& in) {
  WordVectorTable table;
  std::optional<std::size_t> header_dim;
  bool first = true;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto fields = split_ws(line);
    if (fields.empty()) continue;
    if (first) {
      first = false;
      if (fields.size() == 2 && parse_count(fields[0]) && parse_count(fields[1])) {
        header_dim = parse_count(fields[1]);
        continue;
      }
    }
    if (fields.size() < 2) throw MalformedLine(line_no, "token without vector");
    std::vector<double> vec;
    vec.reserve(fields.size() - 1);
    for (std::size_t i = 1; i < fields.size(); ++i) {
      auto v = parse_real(fields[i]);
      if (!v) throw MalformedLine(line_no, "bad number '" + std::string(fields[i]) + "'");
      vec.push_back(*v);
    }
    const std::size_t expected = header_dim ? *header_dim : table.dim_;
    if (expected != 0 && vec.size() != expected) {
      throw InconsistentDimension(line_no, expected, vec.size());
    }
    std::string token = to_lower_ascii(fields[0]);
    if (table.vectors_.count(token)) {
      table.warnings_.push_back("line " + std::to_string(line_no) + ": duplicate token '" + token +
                                "', last occurrence wins");
    }
    table.add(std::move(token), std::move(vec));
  }
  return table;
}

void WordVectorTable::add(std::string token, std::vector<double> vec) {
  if (vec.empty()) throw InvalidArgument("empty word vector");
  if (dim_ == 0) dim_ = vec.size();
  if (vec.size() != dim_) throw DimensionMismatch(dim_, vec.size());
  vectors_[std::move(token)] = std::move(vec);
}

const std::vector<double>* WordVectorTable::find(const std::string& token) const {
  auto it = vectors_.find(token);
  return it == vectors_.end() ? nullptr : &it->second;
}

DocEmbedding embed_document(const TokenStream& tokens, const WordVectorTable& table) {
  if (table.dimension() == 0) throw EmptyVectorTable();
  DocEmbedding e;
  e.vector.assign(table.dimension(), 0.0);
  for (const auto& tok : tokens.tokens) {
    const auto* v = table.find(tok);
    if (!v) continue;
    for (std::size_t i = 0; i < v->size(); ++i) e.vector[i] += (*v)[i];
    ++e.in_vocab_count;
  }
  if (e.in_vocab_count > 0) {
    const auto n = static_cast<double>(e.in_vocab_count);
    for (double& x : e.vector) x /= n;
    e.is_zero = false;
  }
  return e;
}

double cosine(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DimensionMismatch(a.size(), b.size());
  double dot = 0.0;
  double na = 0.0;
  double nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) throw ZeroVector();
  return std::clamp(dot / std::sqrt(na * nb), -1.0, 1.0);
}

// ---- scorers ------------------------------------------------------------------

WordVectorScorer::WordVectorScorer(std::shared_ptr<const WordVectorTable> table, Normalizer normalizer)
    : table_(std::move(table)), normalizer_(std::move(normalizer)) {
  if (!table_) throw InvalidArgument("WordVectorScorer: null table");
}

DocEmbedding WordVectorScorer::embed(std::string_view text) const {
  return embed_document(normalizer_(tokenize(text)), *table_);
}

PairScore WordVectorScorer::score(std::string_view a, std::string_view b) const {
  const auto ea = embed(a);
  const auto eb = embed(b);
  if (ea.is_zero || eb.is_zero) return {0.0, true};
  return {cosine(ea.vector, eb.vector), false};
}

PairScore pair_score(const SentencePairScorer& scorer, std::string_view a, std::string_view b) {
  if (scorer.reentrant()) return scorer.score(a, b);
  std::lock_guard<std::mutex> lock(provider_mutex());
  return scorer.score(a, b);
}

// ---- line protocol --------------------------------------------------------------

std::string encode_score_request(std::string_view a, std::string_view b) {
  std::string out = "SCORE " + std::to_string(a.size()) + " " + std::to_string(b.size()) + "\n";
  out.append(a);
  out += '\n';
  out.append(b);
  out += '\n';
  return out;
}

std::string format_score_response(double score) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "OK %.6f\n", score);
  return buf;
}

std::optional<ScoreRequest> read_score_request(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) {
    if (header.empty()) return std::nullopt;
    throw MalformedLine(1, "truncated request header");
  }
  const auto f = split_ws(header);
  if (f.size() != 3 || f[0] != "SCORE") throw MalformedLine(1, "expected 'SCORE <len_a> <len_b>'");
  const auto la = parse_count(f[1]);
  const auto lb = parse_count(f[2]);
  if (!la || !lb) throw MalformedLine(1, "bad length");

  auto read_text = [&](std::size_t n, std::size_t line_no) {
    std::string s(n, '\0');
    if (n > 0 && !in.read(s.data(), static_cast<std::streamsize>(n))) {
      throw MalformedLine(line_no, "truncated text");
    }
    if (in.get() != '\n') throw MalformedLine(line_no, "text not newline-terminated");
    return s;
  };
  ScoreRequest r;
  r.a = read_text(*la, 2);
  r.b = read_text(*lb, 3);
  return r;
}

double parse_score_response(std::string_view line) {
  while (!line.empty() && (line.back() == '\n' || line.back() == '\r')) line.remove_suffix(1);
  if (line.rfind("OK ", 0) == 0) {
    if (auto v = parse_real(line.substr(3))) return *v;
    throw Error("score provider: bad score '" + std::string(line.substr(3)) + "'");
  }
  if (line.rfind("ERR", 0) == 0) throw Error("score provider error:" + std::string(line.substr(3)));
  throw Error("score provider: unexpected response '" + std::string(line) + "'");
}

void serve_score_protocol(std::istream& in, std::ostream& out, const SentencePairScorer& scorer) {
  for (;;) {
    std::optional<ScoreRequest> req;
    try {
      req = read_score_request(in);
    } catch (const MalformedLine& e) {
      out << "ERR " << e.what() << '\n' << std::flush;
      return;
    }
    if (!req) return;
    try {
      out << format_score_response(pair_score(scorer, req->a, req->b).value);
    } catch (const std::exception& e) {
      out << "ERR " << e.what() << '\n';
    }
    out.flush();
  }
}

// ---- subprocess adapter -----------------------------------------------------------

ProcessScorer::ProcessScorer(std::vector<std::string> argv) : argv_(std::move(argv)) {
  if (argv_.empty()) throw InvalidArgument("ProcessScorer: empty command");
  int fds[2];
  if (::socketpair(AF_UNIX, SOCK_STREAM | SOCK_CLOEXEC, 0, fds) != 0) {
    throw Error(std::string("socketpair: ") + std::strerror(errno));
  }
  std::vector<char*> cargv;
  for (auto& a : argv_) cargv.push_back(a.data());
  cargv.push_back(nullptr);

  const pid_t pid = ::fork();
  if (pid < 0) {
    ::close(fds[0]);
    ::close(fds[1]);
    throw Error(std::string("fork: ") + std::strerror(errno));
  }
  if (pid == 0) {
    ::dup2(fds[1], STDIN_FILENO);
    ::dup2(fds[1], STDOUT_FILENO);
    ::execvp(cargv[0], cargv.data());
    ::_exit(127);
  }
  ::close(fds[1]);
  pid_ = pid;
  to_child_ = from_child_ = fds[0];
}

ProcessScorer::~ProcessScorer() {
  if (to_child_ >= 0) ::close(to_child_);
  if (pid_ > 0) {
    int status = 0;
    while (::waitpid(pid_, &status, 0) < 0 && errno == EINTR) {
    }
  }
}

std::string ProcessScorer::name() const { return "process:" + argv_.front(); }

PairScore ProcessScorer::score(std::string_view a, std::string_view b) const {
  std::lock_guard<std::mutex> lock(mu_);
  const std::string req = encode_score_request(a, b);
  std::size_t sent = 0;
  while (sent < req.size()) {
    const ssize_t n = ::send(to_child_, req.data() + sent, req.size() - sent, MSG_NOSIGNAL);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw Error("score provider: write failed: " + std::string(std::strerror(errno)));
    }
    sent += static_cast<std::size_t>(n);
  }
  for (;;) {
    if (auto nl = buffer_.find('\n'); nl != std::string::npos) {
      const std::string line = buffer_.substr(0, nl + 1);
      buffer_.erase(0, nl + 1);
      return {parse_score_response(line), false};
    }
    char chunk[512];
    const ssize_t n = ::read(from_child_, chunk, sizeof chunk);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) throw Error("score provider exited");
    buffer_.append(chunk, static_cast<std::size_t>(n));
  }
}

}  // namespace amir
