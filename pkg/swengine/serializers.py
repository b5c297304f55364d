"""
Serializers for SW states and surgery-chain documents
"""
from rest_framework import serializers

from config.exceptions import InputError
from lattice.intersection_forms import parse_lattice_literal
from swengine.state import SWState
from swengine.surgery import SurgerySpec


class SWEntrySerializer(serializers.Serializer):
    """One (class, value) entry, class in raw basis coordinates"""
    coords = serializers.ListField(child=serializers.IntegerField())
    value = serializers.IntegerField()


class SWStateSerializer(serializers.Serializer):
    """Serializer for SWState.to_json() documents; the lattice is a lattice literal"""
    lattice = serializers.CharField()
    b2plus = serializers.IntegerField(min_value=0)
    chambered = serializers.BooleanField(default=False)
    entries = SWEntrySerializer(many=True)

    def validate_lattice(self, value):
        try:
            return parse_lattice_literal(value)
        except InputError as e:
            raise serializers.ValidationError(str(e))

    def validate(self, data):
        try:
            data['state'] = SWState.from_json(data, data['lattice'])
        except InputError as e:
            raise serializers.ValidationError(str(e))
        return data

    def create(self, validated_data):
        return validated_data['state']


class SurgeryStepSerializer(serializers.Serializer):
    """Serializer for one torus surgery step"""
    torus = serializers.CharField()
    p = serializers.IntegerField()
    q = serializers.IntegerField()
    luttinger = serializers.BooleanField(default=True)
    kills_pair = serializers.ListField(child=serializers.CharField(), min_length=2, max_length=2,
                                       required=False)
    f01 = serializers.IntegerField(required=False, allow_null=True, default=None)
    vanishing = serializers.BooleanField(default=False)
    axiom = serializers.CharField(required=False, allow_blank=True, default='')

    def to_spec(self, data):
        axiom = data['axiom'] or ('declared' if data['vanishing'] else None)
        try:
            return SurgerySpec(
                torus_label=data['torus'],
                coefficient=(data['p'], data['q']),
                luttinger=data['luttinger'],
                kills_pair=tuple(data['kills_pair']) if data.get('kills_pair') else None,
                f01=data['f01'],
                vanishing_axiom=axiom,
            )
        except InputError as e:
            raise serializers.ValidationError(str(e))


class SurgeryChainSerializer(serializers.Serializer):
    """
    Chain document: either explicit steps on a base value, or a built-in
    chain ("xn" or "yn") with its n. A built-in chain may be followed by blow-ups.
    """
    base_value = serializers.IntegerField(default=1)
    chain = SurgeryStepSerializer(many=True, required=False, default=list)
    builtin = serializers.ChoiceField(choices=['xn', 'yn'], required=False, allow_null=True)
    n = serializers.IntegerField(min_value=1, required=False)
    blowups = serializers.IntegerField(min_value=0, default=0)

    def validate(self, data):
        if data.get('builtin') and 'n' not in data:
            raise serializers.ValidationError("a built-in chain needs n")
        step = SurgeryStepSerializer()
        data['specs'] = [step.to_spec(item) for item in data.get('chain', [])]
        return data
