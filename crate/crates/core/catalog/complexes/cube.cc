# the standard 3-cube
vertex v000
vertex v100
vertex v010
vertex v110
vertex v001
vertex v101
vertex v011
vertex v111
cube 3 v000 v100 v010 v110 v001 v101 v011 v111
