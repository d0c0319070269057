#pragma once

#include "sftlab/block_codes.hpp"
#include "sftlab/entropy_conjugacy.hpp"
#include "sftlab/ideal_class.hpp"
#include "sftlab/json_io.hpp"
#include "sftlab/spectral.hpp"
