from schreierlab.graph.point_set import PointSet
from schreierlab.graph.schreier_graph import SchreierGraph, build_graph, image_under, UNREACHED
