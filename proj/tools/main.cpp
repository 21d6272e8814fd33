// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The lcomp Authors

#include <iostream>

#include "lcomp/cli.hpp"

int main(int argc, char** argv) { return lcomp::cli::run(argc, argv, std::cout, std::cerr); }
