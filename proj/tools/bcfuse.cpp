//
// bcfuse - Copyright 2026 The bcfuse Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <iostream>

#include "bcfuse/cli.h"

int main(int argc, char **argv) {
  return bcfuse::run(argc, argv, std::cout, std::cerr);
}
