#pragma once

#include <stdexcept>
#include <string>

namespace igdep {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class SyntaxError : public Error {
public:
  using Error::Error;
};

class UnknownPolarityToken : public Error {
public:
  explicit UnknownPolarityToken(const std::string& token)
      : Error("unknown polarity token '" + token + "'"), token_(token) {}
  const std::string& token() const noexcept { return token_; }

private:
  std::string token_;
};

class UnknownWord : public Error {
public:
  explicit UnknownWord(const std::string& word)
      : Error("unknown word '" + word + "'"), word_(word) {}
  const std::string& word() const noexcept { return word_; }

private:
  std::string word_;
};

class IndexOutOfRange : public Error {
public:
  using Error::Error;
};

} // namespace igdep
