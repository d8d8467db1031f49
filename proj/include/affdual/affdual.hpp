#pragma once

#include <affdual/crystallographic.hpp>
#include <affdual/homology.hpp>
#include <affdual/noncrossing.hpp>
