// Copyright 2026 The wgqed Authors
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
#include <stdexcept>
#include <string>

namespace wgqed {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotHermitian : public Error {
 public:
  using Error::Error;
};

class NotPsd : public Error {
 public:
  using Error::Error;
};

class BadParam : public Error {
 public:
  using Error::Error;
};

// Deterministic integrator step exceeds T1/100.
class StepTooLarge : public Error {
 public:
  using Error::Error;
};

// Photon-counting step whose click probability is not small.
class DtTooLarge : public Error {
 public:
  using Error::Error;
};

class PositivityLost : public Error {
 public:
  using Error::Error;
};

class KernelState : public Error {
 public:
  using Error::Error;
};

class RecordTooShort : public Error {
 public:
  using Error::Error;
};

class MissingStates : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class RangeError : public Error {
 public:
  RangeError(std::string key, const std::string& what)
      : Error(key + ": " + what), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

// A step error raised inside a trajectory, tagged with where it happened.
// The ensemble layer fills in the trajectory index.
class TrajectoryError : public Error {
 public:
  TrajectoryError(double time, const std::string& what, long index = -1)
      : Error(describe(time, what, index)), time_(time), index_(index), cause_(what) {}
  double time() const noexcept { return time_; }
  long index() const noexcept { return index_; }
  const std::string& cause() const noexcept { return cause_; }

 private:
  static std::string describe(double time, const std::string& what, long index) {
    std::string s;
    if (index >= 0) s += "trajectory " + std::to_string(index) + ", ";
    return s + "t = " + std::to_string(time) + ": " + what;
  }
  double time_;
  long index_;
  std::string cause_;
};

}  // namespace wgqed
