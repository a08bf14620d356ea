#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace amir {

// Base of every error raised by the engine. Callers that only care about
// "something in amir failed" catch this; the derived types carry the
// structured payload the individual operations document.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// ---- corpus -------------------------------------------------------------

class EmptyFile : public Error {
 public:
  explicit EmptyFile(const std::string& path)
      : Error("empty file: " + path), path_(path) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

class MalformedRecord : public Error {
 public:
  MalformedRecord(std::size_t line_no, const std::string& why)
      : Error("malformed record at line " + std::to_string(line_no) + ": " + why),
        line_no_(line_no) {}
  std::size_t line_no() const noexcept { return line_no_; }

 private:
  std::size_t line_no_;
};

class DuplicateId : public Error {
 public:
  explicit DuplicateId(const std::string& id) : Error("duplicate id: " + id), id_(id) {}
  const std::string& id() const noexcept { return id_; }

 private:
  std::string id_;
};

class MissingAssignment : public Error {
 public:
  explicit MissingAssignment(const std::string& doc_id)
      : Error("no topic assignment for document: " + doc_id), doc_id_(doc_id) {}
  const std::string& doc_id() const noexcept { return doc_id_; }

 private:
  std::string doc_id_;
};

// ---- topics -------------------------------------------------------------

class EmptyVocabulary : public Error {
 public:
  EmptyVocabulary() : Error("all documents are empty after normalization") {}
};

class InvalidK : public Error {
 public:
  explicit InvalidK(long k) : Error("invalid topic count K=" + std::to_string(k)) {}
};

// ---- mapping / similarity ----------------------------------------------

class DimensionMismatch : public Error {
 public:
  DimensionMismatch(std::size_t a, std::size_t b)
      : Error("dimension mismatch: " + std::to_string(a) + " vs " + std::to_string(b)) {}
};

class NotADistribution : public Error {
 public:
  using Error::Error;
};

class DegenerateMatrix : public Error {
 public:
  DegenerateMatrix() : Error("distance matrix is degenerate (all topics identical)") {}
};

class NoMatchedKeywords : public Error {
 public:
  NoMatchedKeywords() : Error("no mapping carries matched keywords") {}
};

class InconsistentDimension : public Error {
 public:
  InconsistentDimension(std::size_t line_no, std::size_t expected, std::size_t got)
      : Error("line " + std::to_string(line_no) + ": expected dimension " +
              std::to_string(expected) + ", got " + std::to_string(got)),
        line_no_(line_no) {}
  std::size_t line_no() const noexcept { return line_no_; }

 private:
  std::size_t line_no_;
};

class MalformedLine : public Error {
 public:
  MalformedLine(std::size_t line_no, const std::string& why)
      : Error("malformed line " + std::to_string(line_no) + ": " + why), line_no_(line_no) {}
  std::size_t line_no() const noexcept { return line_no_; }

 private:
  std::size_t line_no_;
};

class ZeroVector : public Error {
 public:
  ZeroVector() : Error("cosine of a zero vector is undefined") {}
};

class EmptyVectorTable : public Error {
 public:
  EmptyVectorTable() : Error("word-vector table is empty; dimension undefined") {}
};

// ---- annotate -----------------------------------------------------------

class DocMismatch : public Error {
 public:
  DocMismatch(std::size_t predicted, std::size_t gold)
      : Error("predicted has " + std::to_string(predicted) + " documents, gold has " +
              std::to_string(gold)) {}
};

// ---- rebuttal -----------------------------------------------------------

class MissingAnnotation : public Error {
 public:
  MissingAnnotation(const std::string& tweet_id, const std::string& what)
      : Error("tweet " + tweet_id + " lacks " + what + " annotation") {}
};

class NoTopicAssignment : public Error {
 public:
  explicit NoTopicAssignment(const std::string& tweet_id)
      : Error("tweet " + tweet_id + " has no topic assignment") {}
};

class EmptyTopic : public Error {
 public:
  explicit EmptyTopic(const std::string& topic)
      : Error("no misleading tweet under topic: " + topic) {}
};

// ---- evaluate -----------------------------------------------------------

class KOutOfRange : public Error {
 public:
  KOutOfRange(std::size_t k, std::size_t n)
      : Error("k=" + std::to_string(k) + " outside [1, " + std::to_string(n) + "]") {}
};

class EmptyQuerySet : public Error {
 public:
  EmptyQuerySet() : Error("no queries to evaluate") {}
};

// ---- pipeline -----------------------------------------------------------

class ConfigInvalid : public Error {
 public:
  using Error::Error;
};

class StaleUpstream : public Error {
 public:
  using Error::Error;
};

}  // namespace amir
