#pragma once

#include "k3fib/embeddings.hpp"
#include "k3fib/io.hpp"
#include "k3fib/mordell_weil.hpp"
#include "k3fib/niemeier.hpp"
#include "k3fib/pipeline.hpp"
#include "k3fib/weierstrass.hpp"
