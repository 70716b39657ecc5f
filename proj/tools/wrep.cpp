// Copyright 2026 The wrep Authors
// SPDX-License-Identifier: Apache-2.0

#include "wrep/cli/commands.hpp"

#include <iostream>

int main(int argc, char** argv) { return wrep::run_cli(argc, argv, std::cout, std::cerr); }
