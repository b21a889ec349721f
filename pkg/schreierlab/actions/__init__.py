from schreierlab.actions.base_action import BaseAction
from schreierlab.actions.element import GroupElement
from schreierlab.actions.family_spec import FamilyName, FamilySpec, parse_family_spec
from schreierlab.actions.factory import ActionFactory, build_action, family_for_degree
