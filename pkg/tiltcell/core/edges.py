import os

import polars as pl

from tiltcell.core.constants import EDGE_ATTRIBUTES
from tiltcell.core.nodes import render_tsv_value


class EdgeSet:
    """edges x -> y of the right preorder, meaning y <=_R x"""

    def __init__(
        self,
        edge_set_name: str = "",
        edge_type: str = "leq_R",
        attributes: list = EDGE_ATTRIBUTES,
    ):
        self.edge_set_name = edge_set_name
        self.path = ""
        self.edges = dict()
        self.edge_type = edge_type
        self.attributes = attributes

    def __getitem__(self, key: str):
        return self.edges[key]

    def __len__(self):
        return len(self.edges)

    def __str__(self):
        rep = ""
        for edge in self.edges:
            rep += f"{edge}:{str(self.edges[edge])}\n"
        return rep

    @staticmethod
    def edge_id(edge: dict) -> str:
        start = edge.get(":START_ID", "no_start")
        end = edge.get(":END_ID", "no_end")
        edge_type = edge.get(":TYPE", "no_type")
        return f"{start}_{end}:{edge_type}"

    def update_edges(self, new_edge: dict, new_edge_id=None):
        set_attributes = [x for x in self.attributes if "string[]" in x]
        new_edge_id = new_edge_id or self.edge_id(new_edge)
        if new_edge_id in self.edges:
            ## merge set valued attributes, e.g. several generators giving the same edge
            for attribute in set_attributes:
                attr_val = new_edge.get(attribute, "")
                attr_val = set([attr_val]) if type(attr_val) == str else set(attr_val)
                self.edges[new_edge_id][attribute] |= attr_val
            return
        self.edges[new_edge_id] = dict()
        for attribute in self.attributes:
            attr_val = new_edge.get(attribute, "")
            if attribute not in set_attributes:
                self.edges[new_edge_id][attribute] = attr_val
            elif attr_val == "":
                self.edges[new_edge_id][attribute] = set()
            else:
                self.edges[new_edge_id][attribute] = (
                    set([attr_val]) if type(attr_val) == str else set(attr_val)
                )

    def load_edge_set(self, path):
        self.path = path
        if not os.path.exists(self.path):
            return
        df = pl.read_csv(self.path, separator="\t", infer_schema_length=0).fill_null("")
        if len(self.attributes) == 0:
            self.attributes = df.columns
        for row in df.iter_rows(named=True):
            edge_id = self.edge_id(row)
            self.edges[edge_id] = dict()
            for attribute in self.attributes:
                val = row.get(attribute, "")
                if ":string[]" in attribute:
                    val = set(v for v in str(val).replace('"', "").split(";") if v)
                self.edges[edge_id][attribute] = val

    def write_edge_set(self, path):
        with open(path, "w") as f:
            f.write("\t".join(self.attributes) + "\n")
            for edge_id in self.edges:
                row = [render_tsv_value(self.edges[edge_id][col]) for col in self.attributes]
                f.write("\t".join(row) + "\n")
