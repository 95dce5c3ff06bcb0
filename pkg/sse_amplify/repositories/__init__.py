from .GraphRepository import GraphRepository
