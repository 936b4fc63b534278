//
// bcfuse - Copyright 2026 The bcfuse Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef BCFUSE_CLI_H_
#define BCFUSE_CLI_H_

#include <iosfwd>

namespace bcfuse {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;  // validation or conflict error
inline constexpr int kExitUsage = 2;

// Entry point of the bcfuse command line: subcommands integrate, align,
// precheck and serve.
int run(int argc, const char *const *argv, std::ostream &out,
        std::ostream &err);

}  // namespace bcfuse

#endif  // BCFUSE_CLI_H_
