from django.apps import AppConfig


class SwengineConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'swengine'
