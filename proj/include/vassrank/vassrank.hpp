#pragma once

#include "vassrank/certificate.hpp"
#include "vassrank/complexity.hpp"
#include "vassrank/dynamics.hpp"
#include "vassrank/farkas.hpp"
#include "vassrank/generate.hpp"
#include "vassrank/graph.hpp"
#include "vassrank/integer.hpp"
#include "vassrank/io.hpp"
#include "vassrank/lp.hpp"
#include "vassrank/ranking.hpp"
#include "vassrank/vass.hpp"
