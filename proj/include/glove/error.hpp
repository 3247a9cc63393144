// Copyright 2026 The glove-weighting Authors. All Rights Reserved.
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

#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace glove {

// Base of every error the library raises.  The CLI maps the two families
// below onto distinct exit statuses.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad input data: malformed files, unknown words, empty vocabularies.
class DataError : public Error {
 public:
  using Error::Error;
};

// Non-finite values or runaway updates during optimization.
class NumericError : public Error {
 public:
  using Error::Error;
};

// Invalid configuration or violated precondition on an argument.
class ConfigError : public Error {
 public:
  using Error::Error;
};

class DecodeError : public DataError {
 public:
  explicit DecodeError(std::size_t offset)
      : DataError("invalid UTF-8 sequence at byte offset " + std::to_string(offset)),
        offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

class EmptyVocabularyError : public DataError {
 public:
  explicit EmptyVocabularyError(std::uint64_t min_count)
      : DataError("empty vocabulary: no word occurs at least " + std::to_string(min_count) +
                  " times") {}
};

class ParseError : public DataError {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& what)
      : DataError(source + ":" + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class UnknownWordError : public DataError {
 public:
  explicit UnknownWordError(const std::string& word)
      : DataError("unknown word '" + word + "'"), word_(word) {}
  const std::string& word() const noexcept { return word_; }

 private:
  std::string word_;
};

class DegenerateVectorError : public DataError {
 public:
  using DataError::DataError;
};

class UndefinedRowError : public DataError {
 public:
  UndefinedRowError(std::uint32_t row, const std::string& label)
      : DataError("co-occurrence row for '" + label + "' has zero total"), row_(row) {}
  std::uint32_t row() const noexcept { return row_; }

 private:
  std::uint32_t row_;
};

class DomainError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class NumericOverflowError : public NumericError {
 public:
  using NumericError::NumericError;
};

}  // namespace glove
