#include <iostream>

#include "replywatch/pipeline.hpp"

int main(int argc, char** argv) {
  return replywatch::dispatch(argc, argv, std::cout, std::cerr);
}
